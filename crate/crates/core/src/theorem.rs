//! Photon-counting experiments on a signal mode mixed with probe modes in a
//! passive linear network.
//!
//! Mode layout: the signal is mode 0, probes are modes `1..N`, and each loss
//! channel adds one vacuum ancilla after them. A loss of probability `ℓ` on
//! mode `m` is a splitter of transmission `1 − ℓ` between `m` and its ancilla;
//! ancillas are traced out before counting. Detectors post-process the true
//! counts of each mode through a stochastic confusion matrix.
//!
//! When every probe is diagonal in the number basis, the count statistics do
//! not depend on the off-diagonal number-basis elements of the signal.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::fock::{coherent_state, poisson, random, DensityMatrix, FockBasis, Tolerances};
use crate::optics::{BeamSplitter, Element, LinearNetwork, NetworkDescription, PhaseShifter};

const PROBE_DIAGONAL_TOL: f64 = 1e-14;
const STOCHASTIC_TOL: f64 = 1e-12;
/// Mixture components lighter than this are dropped from probe ensembles.
const ENSEMBLE_CUTOFF: f64 = 1e-16;

/// Row `n` is the distribution of reported counts given `n` photons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    rows: Vec<Vec<f64>>,
}

impl ConfusionMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(FockError::InvalidParameter("confusion matrix needs at least one row".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(FockError::InvalidParameter(format!("confusion row {n} has a negative or non-finite entry")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > STOCHASTIC_TOL {
                return Err(FockError::InvalidParameter(format!("confusion row {n} sums to {s}")));
            }
        }
        Ok(ConfusionMatrix { rows })
    }

    /// Perfect counting up to `max_count`.
    pub fn identity(max_count: usize) -> Self {
        let rows = (0..=max_count).map(|n| (0..=max_count).map(|k| if k == n { 1.0 } else { 0.0 }).collect()).collect();
        ConfusionMatrix { rows }
    }

    /// Each photon is registered independently with probability `eta`.
    pub fn binomial(eta: f64, max_count: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(FockError::InvalidParameter(format!("efficiency {eta} outside [0, 1]")));
        }
        let lf = poisson::ln_factorials(max_count);
        let rows = (0..=max_count)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        let ln_c = lf[n] - lf[k] - lf[n - k];
                        let pk = if k == 0 { 1.0 } else { eta.powi(k as i32) };
                        let qk = if n == k { 1.0 } else { (1.0 - eta).powi((n - k) as i32) };
                        ln_c.exp() * pk * qk
                    })
                    .collect()
            })
            .collect();
        Ok(ConfusionMatrix { rows })
    }

    pub fn max_count(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[f64]> {
        self.rows.get(n).map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Detector {
    /// Binomial loss of efficiency `eta`, sized to the experiment.
    Efficiency(f64),
    Matrix(ConfusionMatrix),
}

impl Detector {
    pub fn ideal() -> Self {
        Detector::Efficiency(1.0)
    }

    fn resolve(&self, max_count: usize) -> Result<ConfusionMatrix> {
        match self {
            Detector::Efficiency(eta) => ConfusionMatrix::binomial(*eta, max_count),
            Detector::Matrix(m) if m.max_count() >= max_count => ConfusionMatrix::new(m.rows.clone()),
            Detector::Matrix(m) => Err(FockError::InvalidParameter(format!(
                "confusion matrix covers counts up to {}, experiment reaches {max_count}",
                m.max_count()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossStage {
    /// Before the network, on the input mode.
    Input,
    /// After the network, in front of the detector.
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossChannel {
    pub mode: usize,
    pub loss: f64,
    pub stage: LossStage,
}

impl LossChannel {
    pub fn new(mode: usize, loss: f64, stage: LossStage) -> Result<Self> {
        if !(0.0..=1.0).contains(&loss) {
            return Err(FockError::InvalidParameter(format!("loss {loss} outside [0, 1]")));
        }
        Ok(LossChannel { mode, loss, stage })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    network: LinearNetwork,
    probes: Vec<DensityMatrix>,
    losses: Vec<LossChannel>,
    detectors: Vec<Detector>,
    signal_cutoff: usize,
}

impl ExperimentSpec {
    /// `network` acts on `1 + probes.len()` modes; one detector per mode.
    /// Probes must be single-mode and diagonal in the number basis.
    pub fn new(
        network: LinearNetwork,
        signal_cutoff: usize,
        probes: Vec<DensityMatrix>,
        losses: Vec<LossChannel>,
        detectors: Vec<Detector>,
    ) -> Result<Self> {
        let spec = Self::with_any_probes(network, signal_cutoff, probes, losses, detectors)?;
        for (p, probe) in spec.probes.iter().enumerate() {
            let off = off_diagonal_max(probe);
            if off > PROBE_DIAGONAL_TOL {
                return Err(FockError::InvalidParameter(format!(
                    "probe {p} has number-basis coherence {off:e}; use with_any_probes to allow it"
                )));
            }
        }
        Ok(spec)
    }

    /// As [`ExperimentSpec::new`] without the diagonal-probe requirement.
    pub fn with_any_probes(
        network: LinearNetwork,
        signal_cutoff: usize,
        probes: Vec<DensityMatrix>,
        losses: Vec<LossChannel>,
        detectors: Vec<Detector>,
    ) -> Result<Self> {
        let n = 1 + probes.len();
        if network.num_modes() != n {
            return Err(FockError::DimensionMismatch { expected: n, actual: network.num_modes() });
        }
        if detectors.len() != n {
            return Err(FockError::DimensionMismatch { expected: n, actual: detectors.len() });
        }
        for probe in &probes {
            if probe.num_modes() != 1 {
                return Err(FockError::DimensionMismatch { expected: 1, actual: probe.num_modes() });
            }
        }
        for l in &losses {
            if l.mode >= n {
                return Err(FockError::InvalidMode { mode: l.mode, num_modes: n });
            }
        }
        let spec = ExperimentSpec { network, probes, losses, detectors, signal_cutoff };
        for d in &spec.detectors {
            d.resolve(spec.joint_cutoff())?;
        }
        Ok(spec)
    }

    pub fn num_modes(&self) -> usize {
        self.network.num_modes()
    }

    pub fn network(&self) -> &LinearNetwork {
        &self.network
    }

    pub fn probes(&self) -> &[DensityMatrix] {
        &self.probes
    }

    pub fn losses(&self) -> &[LossChannel] {
        &self.losses
    }

    pub fn detectors(&self) -> &[Detector] {
        &self.detectors
    }

    pub fn signal_cutoff(&self) -> usize {
        self.signal_cutoff
    }

    /// Signal cutoff plus every probe cutoff: no photon is ever truncated.
    pub fn joint_cutoff(&self) -> usize {
        self.signal_cutoff + self.probes.iter().map(DensityMatrix::cutoff).sum::<usize>()
    }

    /// Total probability the probes lost to their own truncation.
    pub fn probe_tail_masses(&self) -> Vec<f64> {
        self.probes.iter().map(DensityMatrix::tail_mass).collect()
    }

    /// The network with loss splitters inserted, on `N + L` modes.
    fn full_network(&self) -> Result<LinearNetwork> {
        let n = self.num_modes();
        let mut elements = Vec::new();
        let loss_elements = |stage: LossStage| -> Result<Vec<Element>> {
            self.losses
                .iter()
                .enumerate()
                .filter(|(_, l)| l.stage == stage)
                .map(|(k, l)| BeamSplitter::new(l.mode, n + k, 1.0 - l.loss).map(Element::from))
                .collect()
        };
        elements.extend(loss_elements(LossStage::Input)?);
        elements.extend_from_slice(self.network.elements());
        elements.extend(loss_elements(LossStage::Output)?);
        LinearNetwork::new(n + self.losses.len(), elements)
    }
}

fn off_diagonal_max(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let mut best = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                best = best.max(m[(i, j)].norm());
            }
        }
    }
    best
}

/// Pure-state decomposition `ρ = Σ w_k |v_k⟩⟨v_k|`. Diagonal inputs use
/// number states directly.
fn pure_ensemble(rho: &DensityMatrix) -> Vec<(f64, Vec<Complex64>)> {
    let dim = rho.dim();
    if off_diagonal_max(rho) == 0.0 {
        return (0..dim)
            .filter_map(|n| {
                let w = rho.matrix()[(n, n)].re;
                (w > ENSEMBLE_CUTOFF).then(|| {
                    let mut v = vec![Complex64::new(0.0, 0.0); dim];
                    v[n] = Complex64::new(1.0, 0.0);
                    (w, v)
                })
            })
            .collect();
    }
    let herm = (rho.matrix() + rho.matrix().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    (0..dim)
        .filter(|&k| eig.eigenvalues[k] > ENSEMBLE_CUTOFF)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect()))
        .collect()
}

/// Outcome tuple `(k_1, …, k_N)` to probability.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CountStatistics {
    pub probabilities: BTreeMap<Vec<usize>, f64>,
}

impl CountStatistics {
    pub fn total(&self) -> f64 {
        self.probabilities.values().sum()
    }

    pub fn get(&self, outcome: &[usize]) -> f64 {
        self.probabilities.get(outcome).copied().unwrap_or(0.0)
    }

    /// L∞ distance over the union of outcomes.
    pub fn max_deviation(&self, other: &CountStatistics) -> f64 {
        let mut d = 0.0f64;
        for (k, &p) in &self.probabilities {
            d = d.max((p - other.get(k)).abs());
        }
        for (k, &q) in &other.probabilities {
            if !self.probabilities.contains_key(k) {
                d = d.max(q.abs());
            }
        }
        d
    }

    /// Distribution of the summed count over all detectors.
    pub fn total_count_distribution(&self) -> BTreeMap<usize, f64> {
        let mut out = BTreeMap::new();
        for (k, &p) in &self.probabilities {
            *out.entry(k.iter().sum()).or_insert(0.0) += p;
        }
        out
    }

    pub fn check_invariants(&self, tol: &Tolerances) -> Result<()> {
        let t = self.total();
        if (t - 1.0).abs() > tol.derived {
            return Err(FockError::Invariant(format!("count probabilities sum to {t}")));
        }
        if let Some((k, p)) = self.probabilities.iter().find(|(_, &p)| p < -tol.derived) {
            return Err(FockError::Invariant(format!("outcome {k:?} has probability {p}")));
        }
        Ok(())
    }

    fn apply_confusion(&self, mode: usize, m: &ConfusionMatrix) -> CountStatistics {
        let mut out = BTreeMap::new();
        for (k, &p) in &self.probabilities {
            let row = m.row(k[mode]).expect("confusion matrix sized to the joint cutoff");
            for (reported, &q) in row.iter().enumerate() {
                if q > 0.0 {
                    let mut key = k.clone();
                    key[mode] = reported;
                    *out.entry(key).or_insert(0.0) += p * q;
                }
            }
        }
        CountStatistics { probabilities: out }
    }
}

/// Exact count distribution for `signal` (a single-mode state with the
/// spec's signal cutoff).
pub fn run_experiment(spec: &ExperimentSpec, signal: &DensityMatrix) -> Result<CountStatistics> {
    if signal.num_modes() != 1 {
        return Err(FockError::DimensionMismatch { expected: 1, actual: signal.num_modes() });
    }
    if signal.cutoff() != spec.signal_cutoff {
        return Err(FockError::DimensionMismatch { expected: spec.signal_cutoff + 1, actual: signal.dim() });
    }
    let n = spec.num_modes();
    let network = spec.full_network()?;
    let cutoff = spec.joint_cutoff();
    let basis = Arc::new(FockBasis::new(network.num_modes(), cutoff)?);

    // every combination of probe ensemble members
    let ensembles: Vec<Vec<(f64, Vec<Complex64>)>> = spec.probes.iter().map(pure_ensemble).collect();
    let mut configs: Vec<(f64, Vec<usize>)> = vec![(1.0, Vec::new())];
    for ens in &ensembles {
        configs = configs
            .into_iter()
            .flat_map(|(w, pick)| {
                ens.iter().enumerate().map(move |(k, (wk, _))| {
                    let mut p = pick.clone();
                    p.push(k);
                    (w * wk, p)
                })
            })
            .collect();
    }

    let ds = spec.signal_cutoff + 1;
    let rho = signal.matrix();
    let per_config: Vec<Vec<f64>> = configs
        .par_iter()
        .map(|(weight, pick)| {
            // output amplitudes for each signal number state
            let outputs: Vec<Vec<Complex64>> = (0..ds)
                .map(|j| {
                    let input: Vec<Complex64> = basis
                        .iter()
                        .map(|occ| {
                            if occ[0] != j || occ[n..].iter().any(|&x| x != 0) {
                                return Complex64::new(0.0, 0.0);
                            }
                            pick.iter().enumerate().fold(Complex64::new(1.0, 0.0), |acc, (p, &k)| {
                                let v = &ensembles[p][k].1;
                                acc * v.get(occ[p + 1]).copied().unwrap_or_default()
                            })
                        })
                        .collect();
                    network.apply_amplitudes(&basis, &input)
                })
                .collect();
            (0..basis.dim())
                .map(|i| {
                    let mut s = Complex64::new(0.0, 0.0);
                    for j in 0..ds {
                        let a = outputs[j][i];
                        if a == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for k in 0..ds {
                            s += rho[(j, k)] * a * outputs[k][i].conj();
                        }
                    }
                    weight * s.re
                })
                .collect()
        })
        .collect();

    let mut probabilities = BTreeMap::new();
    for (i, occ) in basis.iter().enumerate() {
        let p: f64 = per_config.iter().map(|v| v[i]).sum();
        if p != 0.0 {
            *probabilities.entry(occ[..n].to_vec()).or_insert(0.0) += p;
        }
    }
    let mut stats = CountStatistics { probabilities };
    for (mode, d) in spec.detectors.iter().enumerate() {
        stats = stats.apply_confusion(mode, &d.resolve(cutoff)?);
    }
    Ok(stats)
}

/// Largest L∞ gap between the statistics of a random signal and of its
/// number-basis diagonal, over `trials` signals drawn from `seed`.
pub fn offdiag_sensitivity(spec: &ExperimentSpec, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(FockError::InvalidParameter("need at least one trial".into()));
    }
    let basis = Arc::new(FockBasis::new(1, spec.signal_cutoff)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signals: Vec<DensityMatrix> = (0..trials)
        .map(|t| {
            if t % 2 == 0 {
                random::pure_state(basis.clone(), &mut rng).to_density()
            } else {
                let rank = rng.random_range(1..=basis.dim());
                random::density_matrix(basis.clone(), rank, &mut rng)
            }
        })
        .collect();
    let devs: Vec<f64> = signals
        .par_iter()
        .map(|rho| Ok(run_experiment(spec, rho)?.max_deviation(&run_experiment(spec, &rho.diagonal_part())?)))
        .collect::<Result<_>>()?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

/// `depth` layers, each a phase shifter on every mode followed by a brick
/// of splitters on neighbouring pairs (offset alternating by layer).
pub fn random_network(num_modes: usize, depth: usize, seed: u64) -> Result<LinearNetwork> {
    if depth == 0 {
        return Err(FockError::InvalidParameter("network depth must be at least 1".into()));
    }
    if num_modes == 0 {
        return Err(FockError::InvalidParameter("network needs at least one mode".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements = Vec::new();
    for layer in 0..depth {
        for m in 0..num_modes {
            elements.push(PhaseShifter::new(m, rng.random_range(0.0..std::f64::consts::TAU))?.into());
        }
        let mut i = layer % 2;
        while i + 1 < num_modes {
            elements.push(BeamSplitter::new(i, i + 1, rng.random::<f64>())?.into());
            i += 2;
        }
    }
    LinearNetwork::new(num_modes, elements)
}

/// Ranges for [`random_spec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecRanges {
    pub max_modes: usize,
    pub max_depth: usize,
    pub max_loss: f64,
    pub min_efficiency: f64,
    pub max_joint_cutoff: usize,
}

impl Default for SpecRanges {
    fn default() -> Self {
        SpecRanges { max_modes: 4, max_depth: 6, max_loss: 0.5, min_efficiency: 0.5, max_joint_cutoff: 8 }
    }
}

/// A random valid spec with number-diagonal probes (Fock, Poisson, or
/// random diagonal), random losses and binomial detectors.
pub fn random_spec(ranges: &SpecRanges, seed: u64) -> Result<ExperimentSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=ranges.max_modes.max(1));
    let depth = rng.random_range(1..=ranges.max_depth.max(1));
    let network = random_network(n, depth, rng.random())?;
    let probe_budget = ranges.max_joint_cutoff.saturating_sub(1);
    let per_probe = if n > 1 { (probe_budget / (n - 1)).clamp(1, 3) } else { 0 };
    let probe_total = per_probe * (n - 1);
    let signal_cutoff = rng.random_range(1..=(ranges.max_joint_cutoff - probe_total).clamp(1, 3));
    let probes = (1..n)
        .map(|_| {
            let c = rng.random_range(0..=per_probe);
            let basis = Arc::new(FockBasis::new(1, c)?);
            let diag: Vec<f64> = match rng.random_range(0..3) {
                0 => {
                    let k = rng.random_range(0..=c);
                    (0..=c).map(|m| if m == k { 1.0 } else { 0.0 }).collect()
                }
                1 => poisson::pmf(rng.random_range(0.0..0.3 * c as f64 + 0.01), c),
                _ => (0..=c).map(|_| rng.random::<f64>()).collect(),
            };
            let m = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                c + 1,
                diag.iter().map(|&x| Complex64::new(x, 0.0)),
            ));
            DensityMatrix::from_matrix(basis, m)
        })
        .collect::<Result<Vec<_>>>()?;
    let losses = (0..rng.random_range(0..=n.min(2)))
        .map(|_| {
            let stage = if rng.random::<bool>() { LossStage::Input } else { LossStage::Output };
            LossChannel::new(rng.random_range(0..n), rng.random_range(0.0..=ranges.max_loss), stage)
        })
        .collect::<Result<Vec<_>>>()?;
    let detectors = (0..n).map(|_| Detector::Efficiency(rng.random_range(ranges.min_efficiency..=1.0))).collect();
    ExperimentSpec::new(network, signal_cutoff, probes, losses, detectors)
}

/// Balanced homodyne arrangement with a coherent probe `|γ⟩` in mode 1:
/// the probe has number-basis coherence, so the theorem's precondition fails.
pub fn coherent_probe_spec(gamma: Complex64, signal_cutoff: usize) -> Result<ExperimentSpec> {
    let probe_cutoff = poisson::min_cutoff(gamma.norm_sqr(), Tolerances::default().tail);
    let probe = coherent_state(gamma, probe_cutoff)?.to_density();
    let network = LinearNetwork::new(2, vec![BeamSplitter::balanced(0, 1)?.into()])?;
    ExperimentSpec::with_any_probes(network, signal_cutoff, vec![probe], Vec::new(), vec![Detector::ideal(); 2])
}

/// Gap between `(|0⟩ + |1⟩)/√2` and its diagonal under [`coherent_probe_spec`].
pub fn coherent_probe_counterexample(gamma: Complex64) -> Result<f64> {
    let spec = coherent_probe_spec(gamma, 1)?;
    let basis = Arc::new(FockBasis::new(1, 1)?);
    let h = Complex64::new(0.5, 0.0);
    let rho = DensityMatrix::from_matrix(basis, DMatrix::from_element(2, 2, h))?;
    Ok(run_experiment(&spec, &rho)?.max_deviation(&run_experiment(&spec, &rho.diagonal_part())?))
}

/// JSON experiment description: the network format plus probe, loss and
/// detector blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(flatten)]
    pub network: NetworkDescription,
    pub signal_cutoff: usize,
    #[serde(default)]
    pub probes: Vec<ProbeDescription>,
    #[serde(default)]
    pub losses: Vec<LossChannel>,
    /// One per mode; ideal detectors when omitted.
    #[serde(default)]
    pub detectors: Vec<Detector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProbeDescription {
    Fock { n: usize },
    Poisson { nbar: f64, cutoff: usize },
    /// Number distribution `weights[n]`, renormalized.
    Diagonal { weights: Vec<f64> },
}

impl ProbeDescription {
    fn build(&self) -> Result<DensityMatrix> {
        let diag = match self {
            ProbeDescription::Fock { n } => (0..=*n).map(|m| if m == *n { 1.0 } else { 0.0 }).collect(),
            ProbeDescription::Poisson { nbar, cutoff } => return crate::fock::poisson_mixture(*nbar, *cutoff),
            ProbeDescription::Diagonal { weights } => {
                if weights.is_empty() || weights.iter().any(|&w| !(w >= 0.0)) {
                    return Err(FockError::InvalidParameter("probe weights must be nonempty and nonnegative".into()));
                }
                weights.clone()
            }
        };
        let basis = Arc::new(FockBasis::new(1, diag.len() - 1)?);
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            diag.len(),
            diag.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        DensityMatrix::from_matrix(basis, m)
    }
}

impl SpecDocument {
    pub fn build(&self) -> Result<ExperimentSpec> {
        let network = self.network.build()?;
        let probes = self.probes.iter().map(ProbeDescription::build).collect::<Result<Vec<_>>>()?;
        let detectors =
            if self.detectors.is_empty() { vec![Detector::ideal(); network.num_modes()] } else { self.detectors.clone() };
        ExperimentSpec::new(network, self.signal_cutoff, probes, self.losses.clone(), detectors)
    }

    pub fn parse(text: &str) -> Result<ExperimentSpec> {
        serde_json::from_str::<SpecDocument>(text)?.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{fock_state, poisson_mixture};
    use crate::twirl::u1_twirl;
    use proptest::prelude::*;

    fn fock_probe(n: usize) -> DensityMatrix {
        fock_state(&[n], n).unwrap().to_density()
    }

    fn single(n: usize, cutoff: usize) -> DensityMatrix {
        fock_state(&[n], cutoff).unwrap().to_density()
    }

    #[test]
    fn identity_network_reports_inputs() {
        let net = LinearNetwork::identity(3).unwrap();
        let spec = ExperimentSpec::new(net, 3, vec![fock_probe(2), fock_probe(1)], vec![], vec![Detector::ideal(); 3]).unwrap();
        let stats = run_experiment(&spec, &single(3, 3)).unwrap();
        assert!((stats.get(&[3, 2, 1]) - 1.0).abs() < 1e-14);
        assert!((stats.total() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_network_with_mixed_probe() {
        let net = LinearNetwork::identity(2).unwrap();
        let probe = poisson_mixture(0.5, 14).unwrap();
        let weights = probe.diagonal();
        let spec = ExperimentSpec::new(net, 2, vec![probe], vec![], vec![Detector::ideal(); 2]).unwrap();
        let stats = run_experiment(&spec, &single(1, 2)).unwrap();
        for (k, w) in weights.iter().enumerate() {
            assert!((stats.get(&[1, k]) - w).abs() < 1e-14);
        }
    }

    #[test]
    fn lossless_total_count_is_conserved() {
        let net = random_network(3, 4, 9).unwrap();
        let spec = ExperimentSpec::new(net, 3, vec![fock_probe(2), fock_probe(1)], vec![], vec![Detector::ideal(); 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let basis = Arc::new(FockBasis::new(1, 3).unwrap());
        let rho = random::density_matrix(basis, 2, &mut rng);
        let totals = run_experiment(&spec, &rho).unwrap().total_count_distribution();
        for (n, p) in rho.diagonal().iter().enumerate() {
            assert!((totals.get(&(n + 3)).copied().unwrap_or(0.0) - p).abs() < 1e-12);
        }
    }

    #[test]
    fn binomial_rows() {
        let m = ConfusionMatrix::binomial(0.7, 4).unwrap();
        assert_eq!(m.row(0).unwrap(), &[1.0]);
        let r = m.row(3).unwrap();
        assert!((r[0] - 0.027).abs() < 1e-15 && (r[3] - 0.343).abs() < 1e-15);
        assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(ConfusionMatrix::new(vec![vec![0.5, 0.4]]).is_err());
        assert!(ConfusionMatrix::new(vec![vec![1.5, -0.5]]).is_err());
        let perfect = ConfusionMatrix::binomial(1.0, 3).unwrap();
        assert!((0..=3).all(|n| perfect.row(n).unwrap()[n] == 1.0));
    }

    #[test]
    fn full_loss_empties_the_mode() {
        let net = LinearNetwork::identity(1).unwrap();
        let loss = LossChannel::new(0, 1.0, LossStage::Output).unwrap();
        let spec = ExperimentSpec::new(net, 2, vec![], vec![loss], vec![Detector::ideal()]).unwrap();
        let stats = run_experiment(&spec, &single(2, 2)).unwrap();
        assert!((stats.get(&[0]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn loss_equals_detector_inefficiency() {
        let net = random_network(2, 3, 4).unwrap();
        let lossy = ExperimentSpec::new(
            net.clone(),
            2,
            vec![fock_probe(2)],
            vec![LossChannel::new(0, 0.3, LossStage::Output).unwrap(), LossChannel::new(1, 0.3, LossStage::Output).unwrap()],
            vec![Detector::ideal(); 2],
        )
        .unwrap();
        let inefficient =
            ExperimentSpec::new(net, 2, vec![fock_probe(2)], vec![], vec![Detector::Efficiency(0.7); 2]).unwrap();
        let rho = single(2, 2);
        let a = run_experiment(&lossy, &rho).unwrap();
        let b = run_experiment(&inefficient, &rho).unwrap();
        assert!(a.max_deviation(&b) < 1e-12);
    }

    #[test]
    fn probes_must_be_diagonal() {
        let coherent = coherent_state(Complex64::new(1.0, 0.0), 16).unwrap().to_density();
        let net = LinearNetwork::identity(2).unwrap();
        assert!(ExperimentSpec::new(net.clone(), 1, vec![coherent.clone()], vec![], vec![Detector::ideal(); 2]).is_err());
        assert!(ExperimentSpec::with_any_probes(net, 1, vec![coherent], vec![], vec![Detector::ideal(); 2]).is_ok());
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let net = LinearNetwork::identity(2).unwrap();
        assert!(ExperimentSpec::new(net.clone(), 1, vec![], vec![], vec![Detector::ideal(); 2]).is_err());
        assert!(ExperimentSpec::new(net.clone(), 1, vec![fock_probe(1)], vec![], vec![Detector::ideal()]).is_err());
        let small = Detector::Matrix(ConfusionMatrix::identity(1));
        assert!(ExperimentSpec::new(net.clone(), 1, vec![fock_probe(1)], vec![], vec![small, Detector::ideal()]).is_err());
        let spec = ExperimentSpec::new(net, 1, vec![fock_probe(1)], vec![], vec![Detector::ideal(); 2]).unwrap();
        assert!(run_experiment(&spec, &single(1, 3)).is_err());
    }

    #[test]
    fn coherent_probe_breaks_insensitivity() {
        let d = coherent_probe_counterexample(Complex64::new(1.0, 0.0)).unwrap();
        assert!(d > 1e-3, "{d}");
    }

    #[test]
    fn half_loss_on_signal_keeps_insensitivity() {
        let spec = ExperimentSpec::new(
            random_network(2, 4, 21).unwrap(),
            3,
            vec![fock_probe(2)],
            vec![LossChannel::new(0, 0.5, LossStage::Input).unwrap()],
            vec![Detector::Efficiency(0.8); 2],
        )
        .unwrap();
        assert!(offdiag_sensitivity(&spec, 5, 3).unwrap() < 1e-10);
    }

    #[test]
    fn twirled_signal_gives_same_counts() {
        let spec = random_spec(&SpecRanges::default(), 77).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let basis = Arc::new(FockBasis::new(1, spec.signal_cutoff()).unwrap());
        let rho = random::pure_state(basis, &mut rng).to_density();
        let a = run_experiment(&spec, &rho).unwrap();
        let b = run_experiment(&spec, &u1_twirl(&rho, 0).unwrap()).unwrap();
        assert!(a.max_deviation(&b) < 1e-10);
    }

    #[test]
    fn random_network_properties() {
        assert!(random_network(3, 0, 1).is_err());
        assert_eq!(random_network(3, 4, 5).unwrap(), random_network(3, 4, 5).unwrap());
        assert_ne!(random_network(3, 4, 5).unwrap(), random_network(3, 4, 6).unwrap());
        let net = random_network(3, 5, 8).unwrap();
        let basis = FockBasis::new(3, 3).unwrap();
        let u = net.unitary(&basis).unwrap();
        assert!(crate::linalg::unitarity_defect(&u) < 1e-9);
    }

    #[test]
    fn spec_document_round_trip() {
        let text = r#"{
            "num_modes": 2,
            "elements": [{"type": "bs", "modes": [0, 1], "T": 0.5}],
            "signal_cutoff": 2,
            "probes": [{"kind": "fock", "n": 1}],
            "losses": [{"mode": 0, "loss": 0.25, "stage": "output"}],
            "detectors": [{"efficiency": 0.9}, {"matrix": {"rows": [[1.0], [0.1, 0.9], [0.0, 0.2, 0.8], [0.0, 0.0, 0.0, 1.0]]}}]
        }"#;
        let spec = SpecDocument::parse(text).unwrap();
        assert_eq!(spec.num_modes(), 2);
        assert_eq!(spec.joint_cutoff(), 3);
        assert!(offdiag_sensitivity(&spec, 4, 0).unwrap() < 1e-10);
        assert!(SpecDocument::parse(r#"{"num_modes": 1, "elements": [], "signal_cutoff": 1, "extra": 0}"#).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn statistics_ignore_signal_coherence(seed in any::<u64>()) {
            let spec = random_spec(&SpecRanges::default(), seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
            let basis = Arc::new(FockBasis::new(1, spec.signal_cutoff()).unwrap());
            let rho = random::density_matrix(basis, 2, &mut rng);
            let a = run_experiment(&spec, &rho).unwrap();
            let b = run_experiment(&spec, &rho.diagonal_part()).unwrap();
            a.check_invariants(&Tolerances::default()).unwrap();
            prop_assert!(a.probabilities.values().all(|&p| p >= -1e-15));
            prop_assert!(a.max_deviation(&b) < 1e-10);
        }
    }
}
