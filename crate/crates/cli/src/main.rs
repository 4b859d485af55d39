//! `fockframes`: reproducible runs of the photon-counting experiments.
//!
//! Each run writes CSV tables and a `manifest.json` into the output
//! directory. Exit status: 0 when every assertion passes, 1 when one fails,
//! 2 for invalid usage (nothing is written).

mod config;
mod error;
mod experiments;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{empty_params, parse_params, read_config, Overlay};
use error::CliError;
use output::Report;

const OUT_ENV: &str = "FOCKFRAMES_OUT";
const DEFAULT_OUT: &str = "fockframes-out";

#[derive(Parser)]
#[command(name = "fockframes", version, about = "Photon-counting experiments on truncated Fock spaces")]
struct Cli {
    /// JSON config: {"experiment": name, "out": dir, ...parameters}.
    /// Command-line flags override values from the file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory [default: $FOCKFRAMES_OUT, else ./fockframes-out]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Classical versus internalized local oscillator over a phase sweep
    Homodyne(config::HomodyneParams),
    /// Single-mode, collective and spin-1/2 twirl identities
    TwirlCheck(config::TwirlParams),
    /// Relative-phase localization under sequential photodetection
    Localize(config::LocalizeParams),
    /// Insensitivity of counting statistics to signal coherence
    TheoremCheck(config::TheoremParams),
    /// Finite local-oscillator corrections to higher moments
    Moments(config::MomentsParams),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Homodyne(_) => "homodyne",
            Command::TwirlCheck(_) => "twirl-check",
            Command::Localize(_) => "localize",
            Command::TheoremCheck(_) => "theorem-check",
            Command::Moments(_) => "moments",
        }
    }

    fn from_name(name: &str) -> Result<Self, CliError> {
        Ok(match name {
            "homodyne" => Command::Homodyne(Default::default()),
            "twirl-check" => Command::TwirlCheck(Default::default()),
            "localize" => Command::Localize(Default::default()),
            "theorem-check" => Command::TheoremCheck(Default::default()),
            "moments" => Command::Moments(Default::default()),
            other => return Err(CliError::usage(format!("unknown experiment {other:?}"))),
        })
    }
}

fn run(cli: Cli) -> Result<(Report, &'static str, PathBuf), CliError> {
    let file = cli.config.as_deref().map(read_config).transpose()?;
    let command = match (cli.command, file.as_ref().and_then(|f| f.experiment.as_deref())) {
        (Some(cmd), Some(name)) if cmd.name() != name => {
            return Err(CliError::usage(format!("config is for {name:?} but the command is {:?}", cmd.name())))
        }
        (Some(cmd), _) => cmd,
        (None, Some(name)) => Command::from_name(name)?,
        (None, None) => return Err(CliError::usage("no experiment given; pass a subcommand or a config with \"experiment\"")),
    };
    let params = file.as_ref().map(|f| &f.params);
    let out = cli
        .out
        .or_else(|| file.as_ref().and_then(|f| f.out.clone()))
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let name = command.name();
    let empty = empty_params();
    let params = params.or(Some(&empty));
    let report = match command {
        Command::Homodyne(p) => experiments::homodyne(p.overlay(parse_params(params)?))?,
        Command::TwirlCheck(p) => experiments::twirl_check(p.overlay(parse_params(params)?))?,
        Command::Localize(p) => experiments::localize(p.overlay(parse_params(params)?))?,
        Command::TheoremCheck(p) => experiments::theorem_check(p.overlay(parse_params(params)?))?,
        Command::Moments(p) => experiments::moments(p.overlay(parse_params(params)?))?,
    };
    Ok((report, name, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, name, out) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = output::write_report(&report, name, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for a in &report.assertions {
        println!("{}: {} ({})", a.name, if a.passed { "PASS" } else { "FAIL" }, a.detail);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
