use std::sync::Arc;

use fockframes::fock::{coherent_state, poisson, poisson_mixture, random, FockBasis, Tolerances};
use fockframes::homodyne::{self, HomodyneSetup, MAX_MOMENT, SECOND_MOMENT_DECAY_SLOPE};
use fockframes::theorem::{self, SpecDocument, SpecRanges};
use fockframes::trajectories::{self, VISIBILITY_THRESHOLD_AFTER_30};
use fockframes::twirl::{self, RatioRelation};
use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{
    Amplitude, AmplitudePair, HomodyneParams, LocalizeParams, MomentsParams, TheoremParams, TwirlParams,
};
use crate::error::CliError;
use crate::output::{Assertion, Cell, Report, Table};

pub const MEAN_TOLERANCE: f64 = 1e-8;
pub const TWIRL_TOLERANCE: f64 = 1e-12;
pub const COLLECTIVE_TOLERANCE: f64 = 1e-10;
pub const THEOREM_TOLERANCE: f64 = 1e-10;
pub const COUNTEREXAMPLE_FLOOR: f64 = 1e-3;
pub const SLOPE_WINDOW: f64 = 0.5;

fn config_value<T: Serialize>(resolved: &T) -> Value {
    serde_json::to_value(resolved).expect("resolved parameters serialize")
}

fn c(z: Complex64) -> Amplitude {
    Amplitude(z)
}

fn require_seed(seed: Option<u64>) -> Result<u64, CliError> {
    seed.ok_or_else(|| CliError::usage("--seed is required for this experiment"))
}

#[derive(Serialize)]
struct HomodyneResolved {
    alpha: Amplitude,
    beta: Amplitude,
    phi_steps: usize,
    cutoff: usize,
    moments: u32,
}

pub fn homodyne(p: HomodyneParams) -> Result<Report, CliError> {
    let alpha = p.alpha.map_or(Complex64::new(1.0, 0.0), |a| a.0);
    let beta = p.beta.map_or(Complex64::new(2.0, 0.0), |a| a.0);
    let steps = p.phi_steps.unwrap_or(64);
    let moments = p.moments.unwrap_or(2);
    if steps == 0 {
        return Err(CliError::usage("--phi-steps must be at least 1"));
    }
    if moments == 0 || moments > MAX_MOMENT {
        return Err(CliError::usage(format!("--moments must be between 1 and {MAX_MOMENT}")));
    }
    let cutoff = p.cutoff.unwrap_or_else(|| homodyne::required_cutoff(alpha, beta));
    let setup = HomodyneSetup::new(alpha, beta, 0.0, cutoff).map_err(|e| CliError::usage(e.to_string()))?;

    let rows = homodyne::phase_scan(alpha, beta, steps, cutoff, moments)?;
    let mut header = vec!["phi".to_string(), "factist_mean".into(), "fictionist_mean".into(), "abs_diff".into()];
    for k in 2..=moments {
        header.extend([
            format!("factist_moment_{k}"),
            format!("fictionist_moment_{k}"),
            format!("moment_diff_{k}"),
            format!("normalized_moment_diff_{k}"),
        ]);
    }
    let mut table = Table::new(header);
    for r in &rows {
        let mut cells: Vec<Cell> = vec![r.phi.into(), r.factist_mean.into(), r.fictionist_mean.into(), r.abs_diff.into()];
        for m in &r.moments {
            cells.extend([m.factist.into(), m.fictionist.into(), m.difference.into(), m.normalized_difference.into()]);
        }
        table.push(cells);
    }
    let worst = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    let mut tails = Map::new();
    tails.insert("signal".into(), json!(poisson::tail(alpha.norm_sqr(), cutoff)));
    tails.insert("local_oscillator".into(), json!(poisson::tail(beta.norm_sqr(), cutoff)));
    tails.insert("joint".into(), json!(setup.tail_mass()));
    Ok(Report {
        tables: vec![("homodyne.csv".into(), table)],
        config: config_value(&HomodyneResolved { alpha: c(alpha), beta: c(beta), phi_steps: steps, cutoff, moments }),
        tail_masses: tails,
        assertions: vec![Assertion::below("mean_equality", worst, MEAN_TOLERANCE)],
    })
}

#[derive(Serialize)]
struct TwirlResolved {
    alphas: Vec<Amplitude>,
    pairs: Vec<AmplitudePair>,
    qubits: usize,
    seed: u64,
}

pub fn twirl_check(p: TwirlParams) -> Result<Report, CliError> {
    let seed = require_seed(p.seed)?;
    let alphas = p.alphas.unwrap_or_else(|| {
        ["0.5", "1", "2i", "1+i"].iter().map(|s| s.parse().expect("default amplitude")).collect()
    });
    let pairs = p.pairs.unwrap_or_else(|| {
        ["1:2", "1:4", "0.5:3"].iter().map(|s| s.parse().expect("default pair")).collect()
    });
    let qubits = p.qubits.unwrap_or(100);
    if pairs.iter().any(|AmplitudePair(_, b)| b.0.norm() == 0.0) {
        return Err(CliError::usage("collective pairs need a nonzero reference amplitude"));
    }
    let tol = Tolerances::default();

    let mut single = Table::new(["alpha", "cutoff", "tail_mass", "max_deviation"]);
    let mut tails = Map::new();
    let mut worst_single = 0.0f64;
    for a in &alphas {
        let nbar = a.0.norm_sqr();
        let cutoff = poisson::min_cutoff(nbar, tol.tail);
        let rho = coherent_state(a.0, cutoff)?.to_density();
        let dev = twirl::u1_twirl(&rho, 0)?.max_abs_diff(&poisson_mixture(nbar, cutoff)?)?;
        worst_single = worst_single.max(dev);
        tails.insert(format!("coherent {a}"), json!(rho.tail_mass()));
        single.push(vec![a.to_string().into(), cutoff.into(), rho.tail_mass().into(), dev.into()]);
    }

    let reports = pairs
        .par_iter()
        .map(|AmplitudePair(a, b)| {
            let cutoff = poisson::min_cutoff(a.0.norm_sqr() + b.0.norm_sqr(), tol.tail);
            twirl::collective_equivalence(a.0, b.0, cutoff)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut header = vec![
        "alpha".to_string(),
        "beta".into(),
        "cutoff".into(),
        "fitted_t".into(),
        "fitted_phi".into(),
        "amplitude_ratio".into(),
    ];
    header.extend(RatioRelation::ALL.iter().map(|r| format!("residual {}", r.name())));
    header.extend(["best_relation".into(), "max_deviation".into()]);
    let mut collective = Table::new(header);
    let mut worst_collective = 0.0f64;
    for r in &reports {
        worst_collective = worst_collective.max(r.max_abs_diff);
        tails.insert(format!("pair {}:{}", c(r.alpha), c(r.beta)), json!(r.tail_mass));
        let mut row: Vec<Cell> = vec![
            c(r.alpha).to_string().into(),
            c(r.beta).to_string().into(),
            r.cutoff.into(),
            r.fitted_transmission.into(),
            r.fitted_phase.into(),
            (r.alpha.norm_sqr() / r.beta.norm_sqr()).into(),
        ];
        row.extend(r.relation_residuals.iter().map(|&(_, x)| Cell::from(x)));
        row.extend([r.best_relation().name().into(), r.max_abs_diff.into()]);
        collective.push(row);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = Arc::new(FockBasis::new(1, 1)?);
    let half = Complex64::new(0.5, 0.0);
    let mut su2 = Table::new(["qubit", "twirl_deviation", "oracle_deviation"]);
    let (mut worst_twirl, mut worst_oracle) = (0.0f64, 0.0f64);
    for q in 0..qubits {
        let rho = random::pure_state(basis.clone(), &mut rng).to_density();
        let m = Matrix2::from_fn(|i, j| rho.matrix()[(i, j)]);
        let target = Matrix2::identity() * half;
        let t = (twirl::su2_twirl_spin_half(&m)? - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let o = (twirl::oracle::pauli_average(&m) - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst_twirl = worst_twirl.max(t);
        worst_oracle = worst_oracle.max(o);
        su2.push(vec![q.into(), t.into(), o.into()]);
    }

    Ok(Report {
        tables: vec![
            ("twirl_identity.csv".into(), single),
            ("collective.csv".into(), collective),
            ("su2.csv".into(), su2),
        ],
        config: config_value(&TwirlResolved { alphas, pairs, qubits, seed }),
        tail_masses: tails,
        assertions: vec![
            Assertion::below("single_mode_twirl_identity", worst_single, TWIRL_TOLERANCE),
            Assertion::below("collective_twirl_equivalence", worst_collective, COLLECTIVE_TOLERANCE),
            Assertion::check(
                "su2_twirl_exact",
                worst_twirl == 0.0,
                worst_twirl,
                0.0,
                format!("max deviation from I/2 is {worst_twirl:e}"),
            ),
            Assertion::below("su2_pauli_oracle", worst_oracle, TWIRL_TOLERANCE),
        ],
    })
}

#[derive(Serialize)]
struct LocalizeResolved {
    n: usize,
    k: usize,
    seeds: usize,
    seed: u64,
    grid: usize,
}

pub fn localize(p: LocalizeParams) -> Result<Report, CliError> {
    let seed = require_seed(p.seed)?;
    let n = p.n.unwrap_or(20);
    let k = p.k.unwrap_or(30);
    let count = p.seeds.unwrap_or(500);
    let grid = p.grid.unwrap_or(trajectories::DEFAULT_GRID);
    if n == 0 || k >= 2 * n {
        return Err(CliError::usage(format!("need n >= 1 and k <= 2n - 1, got n = {n}, k = {k}")));
    }
    if count < 2 || grid == 0 {
        return Err(CliError::usage("--seeds must be at least 2 and --grid at least 1"));
    }
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    let summary = trajectories::run_ensemble(n, k, &seeds, grid)?;

    let mut vis = Table::new(["step", "mean_visibility", "standard_error"]);
    let mut ent = Table::new(["step", "mean_entropy", "standard_error", "mean_change", "change_standard_error"]);
    for step in 0..=k {
        vis.push(vec![step.into(), summary.visibility.mean[step].into(), summary.visibility.standard_error[step].into()]);
        let (dm, ds) = if step == 0 {
            (Cell::Empty, Cell::Empty)
        } else {
            (summary.entropy_change.mean[step - 1].into(), summary.entropy_change.standard_error[step - 1].into())
        };
        ent.push(vec![
            step.into(),
            summary.entropy.mean[step].into(),
            summary.entropy.standard_error[step].into(),
            dm,
            ds,
        ]);
    }
    let mut phases = Table::new(["seed", "phase_sample", "posterior_peak"]);
    for i in 0..count {
        phases.push(vec![seeds[i].into(), summary.phase_samples[i].into(), summary.peaks[i].into()]);
    }

    let half = count as f64 / 2.0;
    let sigma = (count as f64 * 0.25).sqrt();
    let first_c = summary.first_c as f64;
    let mut assertions = vec![Assertion::check(
        "first_detection_balanced",
        (first_c - half).abs() <= 3.0 * sigma,
        first_c,
        3.0 * sigma,
        format!("{} of {count} first clicks at port c; allowed {half} ± {:.3}", summary.first_c, 3.0 * sigma),
    )];
    if n == 20 && k == 30 {
        assertions.push(Assertion::above("visibility_after_30", summary.visibility.mean[k], VISIBILITY_THRESHOLD_AFTER_30));
    }
    let rises = summary.entropy_increases(3.0);
    assertions.push(Assertion::check(
        "entropy_non_increasing",
        rises.is_empty(),
        rises.len() as f64,
        0.0,
        if rises.is_empty() {
            "no step raises the mean entropy by more than 3 paired standard errors".into()
        } else {
            format!("mean entropy rises by more than 3 paired standard errors at steps {rises:?}")
        },
    ));
    let (d, pval) = trajectories::ks_uniform_phase(&summary.phase_samples);
    assertions.push(Assertion::check(
        "phase_uniformity",
        pval >= 0.01,
        pval,
        0.01,
        format!("Kolmogorov-Smirnov D = {d:.6}, p = {pval:.6}"),
    ));
    let mut tails = Map::new();
    tails.insert("initial_state".into(), json!(0.0));
    Ok(Report {
        tables: vec![
            ("visibility.csv".into(), vis),
            ("entropy.csv".into(), ent),
            ("phase_samples.csv".into(), phases),
        ],
        config: config_value(&LocalizeResolved { n, k, seeds: count, seed, grid }),
        tail_masses: tails,
        assertions,
    })
}

#[derive(Serialize)]
struct TheoremResolved {
    modes: usize,
    depth: usize,
    trials: usize,
    signals: usize,
    seed: u64,
    max_loss: f64,
    min_efficiency: f64,
    gamma: Amplitude,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<String>,
}

pub fn theorem_check(p: TheoremParams) -> Result<Report, CliError> {
    let seed = require_seed(p.seed)?;
    let modes = p.modes.unwrap_or(4);
    let depth = p.depth.unwrap_or(6);
    let trials = p.trials.unwrap_or(100);
    let signals = p.signals.unwrap_or(2);
    let max_loss = p.max_loss.unwrap_or(0.5);
    let min_eff = p.min_efficiency.unwrap_or(0.5);
    let gamma = p.gamma.map_or(Complex64::new(1.0, 0.0), |a| a.0);
    if modes == 0 || depth == 0 || trials == 0 || signals == 0 {
        return Err(CliError::usage("--modes, --depth, --trials and --signals must be at least 1"));
    }
    if !(0.0..=1.0).contains(&max_loss) || !(0.0..=1.0).contains(&min_eff) {
        return Err(CliError::usage("--max-loss and --min-efficiency must lie in [0, 1]"));
    }
    let file_spec = match &p.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read spec {}: {e}", path.display())))?;
            Some(SpecDocument::parse(&text).map_err(|e| CliError::usage(format!("invalid spec: {e}")))?)
        }
        None => None,
    };
    let ranges = SpecRanges { max_modes: modes, max_depth: depth, max_loss, min_efficiency: min_eff, ..Default::default() };

    let mut table = Table::new(["trial", "spec_seed", "modes", "signal_cutoff", "joint_cutoff", "losses", "max_deviation"]);
    let mut tails = Map::new();
    let rows: Vec<(u64, theorem::ExperimentSpec, f64)> = match file_spec {
        Some(spec) => {
            let dev = theorem::offdiag_sensitivity(&spec, trials, seed)?;
            vec![(seed, spec, dev)]
        }
        None => (0..trials as u64)
            .into_par_iter()
            .map(|i| {
                let s = seed.wrapping_add(i);
                let spec = theorem::random_spec(&ranges, s)?;
                let dev = theorem::offdiag_sensitivity(&spec, signals, s)?;
                Ok((s, spec, dev))
            })
            .collect::<Result<_, fockframes::FockError>>()?,
    };
    let mut worst = 0.0f64;
    let mut probe_tail = 0.0f64;
    for (i, (s, spec, dev)) in rows.iter().enumerate() {
        worst = worst.max(*dev);
        probe_tail = spec.probe_tail_masses().into_iter().fold(probe_tail, f64::max);
        table.push(vec![
            i.into(),
            (*s).into(),
            spec.num_modes().into(),
            spec.signal_cutoff().into(),
            spec.joint_cutoff().into(),
            spec.losses().len().into(),
            (*dev).into(),
        ]);
    }
    tails.insert("max_probe".into(), json!(probe_tail));

    let counter_spec = theorem::coherent_probe_spec(gamma, 1)?;
    tails.insert("coherent_probe".into(), json!(counter_spec.probe_tail_masses()[0]));
    let counter = theorem::coherent_probe_counterexample(gamma)?;
    let mut ce = Table::new(["gamma", "probe_cutoff", "max_deviation"]);
    ce.push(vec![c(gamma).to_string().into(), counter_spec.probes()[0].cutoff().into(), counter.into()]);

    Ok(Report {
        tables: vec![("theorem.csv".into(), table), ("counterexample.csv".into(), ce)],
        config: config_value(&TheoremResolved {
            modes,
            depth,
            trials,
            signals,
            seed,
            max_loss,
            min_efficiency: min_eff,
            gamma: c(gamma),
            spec: p.spec.map(|s| s.display().to_string()),
        }),
        tail_masses: tails,
        assertions: vec![
            Assertion::below("offdiag_insensitivity", worst, THEOREM_TOLERANCE),
            Assertion::above("coherent_probe_counterexample", counter, COUNTEREXAMPLE_FLOOR),
        ],
    })
}

#[derive(Serialize)]
struct MomentsResolved {
    alpha: Amplitude,
    betas: Vec<f64>,
    order: u32,
    phi: f64,
}

pub fn moments(p: MomentsParams) -> Result<Report, CliError> {
    let alpha = p.alpha.map_or(Complex64::new(1.0, 0.0), |a| a.0);
    let betas = p.betas.unwrap_or_else(|| vec![2.0, 4.0, 8.0, 16.0]);
    let order = p.order.unwrap_or(2);
    let phi = p.phi.unwrap_or(0.0);
    if order == 0 || order > MAX_MOMENT {
        return Err(CliError::usage(format!("--order must be between 1 and {MAX_MOMENT}")));
    }
    if betas.len() < 2 || betas.iter().any(|b| !(*b > 0.0) || !b.is_finite()) {
        return Err(CliError::usage("--betas needs at least two positive values"));
    }
    let results = betas
        .par_iter()
        .map(|&b| {
            let setup = HomodyneSetup::with_auto_cutoff(alpha, Complex64::new(b, 0.0), phi)?;
            Ok((setup.cutoff(), setup.tail_mass(), homodyne::moment_compare(&setup, order)?))
        })
        .collect::<Result<Vec<_>, fockframes::FockError>>()?;

    let mut table = Table::new([
        "beta",
        "cutoff",
        "tail_mass",
        "factist",
        "fictionist",
        "difference",
        "normalized_difference",
    ]);
    let mut tails = Map::new();
    for (b, (cutoff, tail, m)) in betas.iter().zip(&results) {
        tails.insert(format!("beta {b}"), json!(tail));
        table.push(vec![
            (*b).into(),
            (*cutoff).into(),
            (*tail).into(),
            m.factist.into(),
            m.fictionist.into(),
            m.difference.into(),
            m.normalized_difference.into(),
        ]);
    }
    let gaps: Vec<f64> = results.iter().map(|(_, _, m)| m.normalized_difference.unwrap_or(f64::NAN).abs()).collect();
    let mut assertions = Vec::new();
    if order == 1 {
        let worst = results.iter().map(|(_, _, m)| m.difference.abs()).fold(0.0, f64::max);
        assertions.push(Assertion::below("first_moment_equality", worst, MEAN_TOLERANCE));
    } else {
        let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
        assertions.push(Assertion::check(
            "normalized_difference_decreasing",
            decreasing,
            gaps.last().copied().unwrap_or(f64::NAN),
            0.0,
            format!("normalized differences {gaps:?}"),
        ));
        if order == 2 {
            let slope = homodyne::loglog_slope(&betas, &gaps);
            assertions.push(Assertion::check(
                "decay_slope",
                (slope - SECOND_MOMENT_DECAY_SLOPE).abs() <= SLOPE_WINDOW,
                slope,
                SECOND_MOMENT_DECAY_SLOPE,
                format!("log-log slope {slope:.6}, expected {SECOND_MOMENT_DECAY_SLOPE} ± {SLOPE_WINDOW}"),
            ));
        }
    }
    Ok(Report {
        tables: vec![("moments.csv".into(), table)],
        config: config_value(&MomentsResolved { alpha: c(alpha), betas, order, phi }),
        tail_masses: tails,
        assertions,
    })
}
