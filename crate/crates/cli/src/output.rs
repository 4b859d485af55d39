use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// Decimal notation with a fixed number of significant digits.
pub fn format_number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit, e.g. 9.99… → 10.0…
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded != 0.0 && (rounded.abs().log10().floor() as i64) > exp && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x, SIGNIFICANT_DIGITS),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }
}

pub fn emit_csv(table: &Table, path: &Path) -> Result<(), CliError> {
    let width = table.header.len();
    if let Some((i, r)) = table.rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(CliError::usage(format!("row {i} has {} cells, header has {width}", r.len())));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_path(path)?;
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Assertion {
    pub fn below(name: &str, value: f64, threshold: f64) -> Self {
        Assertion {
            name: name.into(),
            passed: value < threshold,
            value,
            threshold,
            detail: format!("{value:.3e} < {threshold:e}"),
        }
    }

    pub fn above(name: &str, value: f64, threshold: f64) -> Self {
        Assertion {
            name: name.into(),
            passed: value > threshold,
            value,
            threshold,
            detail: format!("{value:.3e} > {threshold:e}"),
        }
    }

    pub fn check(name: &str, passed: bool, value: f64, threshold: f64, detail: String) -> Self {
        Assertion { name: name.into(), passed, value, threshold, detail }
    }
}

/// Everything an experiment produces before anything touches the disk.
#[derive(Debug, Clone)]
pub struct Report {
    pub tables: Vec<(String, Table)>,
    pub config: Value,
    pub tail_masses: serde_json::Map<String, Value>,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    experiment: &'a str,
    config: &'a Value,
    outputs: Vec<&'a str>,
    tail_masses: &'a serde_json::Map<String, Value>,
    assertions: &'a [Assertion],
    passed: bool,
}

pub fn write_report(report: &Report, experiment: &str, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    for (name, table) in &report.tables {
        emit_csv(table, &dir.join(name))?;
    }
    let manifest = Manifest {
        tool: "fockframes",
        version: env!("CARGO_PKG_VERSION"),
        experiment,
        config: &report.config,
        outputs: report.tables.iter().map(|(n, _)| n.as_str()).collect(),
        tail_masses: &report.tail_masses,
        assertions: &report.assertions,
        passed: report.passed(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text)?;
    Ok(())
}
