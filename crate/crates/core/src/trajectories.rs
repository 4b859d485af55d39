//! Sequential photodetection behind a balanced beam splitter.
//!
//! Two modes `a = 0` and `b = 1` meet at a 50/50 splitter whose output ports
//! are `c = (a − b)/√2` and `d = (a + b)/√2`. Each click removes one photon
//! through the matching jump operator. Starting from `|n⟩|n⟩`, the record of
//! clicks builds up a relative phase between the two sources.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::fock::{fock_state, DensityMatrix, FockVector, Operator, State};

pub const DEFAULT_GRID: usize = 256;

/// Mean visibility after 30 clicks from `|20⟩|20⟩` in the convergence study
/// (seeds `10_000..12_000`): 0.632 with standard error 0.007.
pub const STUDY_VISIBILITY_AFTER_30: f64 = 0.632;

/// Acceptance threshold for the same quantity on a 500-seed ensemble: the
/// study mean less about 3.5 standard errors of a 500-seed mean.
pub const VISIBILITY_THRESHOLD_AFTER_30: f64 = 0.58;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Port {
    C,
    D,
}

impl Port {
    pub fn label(self) -> char {
        match self {
            Port::C => 'c',
            Port::D => 'd',
        }
    }

    /// `(a ∓ b)/√2` on modes 0 and 1.
    pub fn jump_operator(self) -> Operator {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let b = Operator::annihilate(1).scale(s);
        let a = Operator::annihilate(0).scale(s);
        match self {
            Port::C => a - b,
            Port::D => a + b,
        }
    }
}

/// One possible click: its probability and the normalized conditioned state.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub port: Port,
    pub probability: f64,
    pub state: State,
}

fn check_two_mode(num_modes: usize) -> Result<()> {
    if num_modes != 2 {
        return Err(FockError::DimensionMismatch { expected: 2, actual: num_modes });
    }
    Ok(())
}

/// Both click outcomes for `state`. Probabilities sum to one.
pub fn branches(state: &State) -> Result<[Branch; 2]> {
    check_two_mode(state.basis().num_modes())?;
    let ports = [Port::C, Port::D];
    let (weights, posts): (Vec<f64>, Vec<State>) = match state {
        State::Pure(psi) => {
            let mut w = Vec::new();
            let mut p = Vec::new();
            for port in ports {
                let amps = psi.apply(&port.jump_operator())?;
                let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
                w.push(norm);
                p.push(amps);
            }
            if w.iter().sum::<f64>() <= 0.0 {
                return Err(FockError::Vacuum);
            }
            let posts = p
                .into_iter()
                .zip(&w)
                .map(|(amps, &wt)| {
                    if wt > 0.0 {
                        FockVector::from_amplitudes(psi.basis().clone(), amps).map(State::Pure)
                    } else {
                        Ok(state.clone())
                    }
                })
                .collect::<Result<_>>()?;
            (w, posts)
        }
        State::Mixed(rho) => {
            let mut w = Vec::new();
            let mut m = Vec::new();
            for port in ports {
                let k = rho.sandwich(&port.jump_operator());
                w.push(k.trace().re);
                m.push(k);
            }
            if w.iter().sum::<f64>() <= 0.0 {
                return Err(FockError::Vacuum);
            }
            let posts = m
                .into_iter()
                .zip(&w)
                .map(|(mat, &wt)| {
                    if wt > 0.0 {
                        DensityMatrix::from_matrix(rho.basis().clone(), mat).map(State::Mixed)
                    } else {
                        Ok(state.clone())
                    }
                })
                .collect::<Result<_>>()?;
            (w, posts)
        }
    };
    let total: f64 = weights.iter().sum();
    let mut posts = posts.into_iter();
    Ok([
        Branch { port: Port::C, probability: weights[0] / total, state: posts.next().unwrap() },
        Branch { port: Port::D, probability: weights[1] / total, state: posts.next().unwrap() },
    ])
}

/// Sample one click.
pub fn detect_one<R: Rng + ?Sized>(state: &State, rng: &mut R) -> Result<Branch> {
    let [c, d] = branches(state)?;
    let u: f64 = rng.random();
    Ok(if u < c.probability { c } else { d })
}

/// `(cρc† + dρd†) / Tr(…)`: the state averaged over click outcomes.
pub fn nonselective_channel(rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_two_mode(rho.num_modes())?;
    let m = rho.sandwich(&Port::C.jump_operator()) + rho.sandwich(&Port::D.jump_operator());
    if m.trace().re <= 0.0 {
        return Err(FockError::Vacuum);
    }
    DensityMatrix::from_matrix(rho.basis().clone(), m)
}

/// `(max − min)/(max + min)` of the intensity at port `d` when a test phase
/// `φ` is applied to mode `i`, i.e. `2|⟨a_i† a_j⟩| / ⟨N_i + N_j⟩`.
///
/// The port-difference signal sums to zero over a period and cannot be
/// normalized this way, so the single-port intensity is used.
pub fn visibility(state: &State, modes: (usize, usize)) -> Result<f64> {
    let (i, j) = modes;
    let n = state.basis().num_modes();
    for m in [i, j] {
        if m >= n {
            return Err(FockError::InvalidMode { mode: m, num_modes: n });
        }
    }
    if i == j {
        return Err(FockError::InvalidParameter("visibility needs two distinct modes".into()));
    }
    let coherence = Operator::create(i).compose(&Operator::annihilate(j));
    let intensity = Operator::number(i) + Operator::number(j);
    let (g, total) = match state {
        State::Pure(psi) => (psi.expectation(&coherence)?, psi.expectation(&intensity)?.re),
        State::Mixed(rho) => (rho.expectation(&coherence)?, rho.expectation(&intensity)?.re),
    };
    if total <= 0.0 {
        return Err(FockError::Vacuum);
    }
    Ok((2.0 * g.norm() / total).min(1.0))
}

/// Weights over `θ_k = 2πk/grid` proportional to `|⟨θ_k|ψ⟩|²` with
/// `|θ⟩ = Σ_m e^{imθ}|m, S−m⟩`, where `S` is the photon number left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePosterior {
    pub weights: Vec<f64>,
}

impl PhasePosterior {
    pub fn uniform(grid: usize) -> Self {
        PhasePosterior { weights: vec![1.0 / grid as f64; grid] }
    }

    /// `psi` must lie in a single total-number sector.
    pub fn from_state(psi: &FockVector, grid: usize) -> Result<Self> {
        check_two_mode(psi.num_modes())?;
        if grid == 0 {
            return Err(FockError::InvalidParameter("posterior grid must be nonempty".into()));
        }
        let basis = psi.basis();
        let mut sector = None;
        let mut amps: Vec<(usize, Complex64)> = Vec::new();
        for (idx, z) in psi.amplitudes().iter().enumerate() {
            if z.norm_sqr() < 1e-30 {
                continue;
            }
            let total = basis.total(idx);
            match sector {
                None => sector = Some(total),
                Some(s) if s != total => {
                    return Err(FockError::InvalidParameter("posterior needs a state of definite photon number".into()))
                }
                _ => {}
            }
            amps.push((basis.occupation(idx)[0], *z));
        }
        let weights: Vec<f64> = (0..grid)
            .map(|k| {
                let th = TAU * k as f64 / grid as f64;
                amps.iter().map(|&(m, z)| Complex64::from_polar(1.0, -(m as f64) * th) * z).sum::<Complex64>().norm_sqr()
            })
            .collect();
        let total: f64 = weights.iter().sum();
        Ok(PhasePosterior { weights: weights.into_iter().map(|w| w / total).collect() })
    }

    pub fn grid(&self) -> usize {
        self.weights.len()
    }

    pub fn theta(&self, k: usize) -> f64 {
        TAU * k as f64 / self.grid() as f64
    }

    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        -self.weights.iter().filter(|&&w| w > 0.0).map(|w| w * w.ln()).sum::<f64>()
    }

    /// Grid point of largest weight; the lowest index wins ties.
    pub fn peak(&self) -> f64 {
        let mut best = 0;
        for (k, &w) in self.weights.iter().enumerate() {
            if w > self.weights[best] * (1.0 + 1e-12) {
                best = k;
            }
        }
        self.theta(best)
    }

    /// A phase drawn from the posterior, spread uniformly over its grid cell.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut pick = self.grid() - 1;
        for (k, &w) in self.weights.iter().enumerate() {
            acc += w;
            if u < acc {
                pick = k;
                break;
            }
        }
        let cell = TAU / self.grid() as f64;
        let jitter: f64 = rng.random::<f64>() - 0.5;
        (self.theta(pick) + jitter * cell).rem_euclid(TAU)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub photons_per_mode: usize,
    pub seed: u64,
    pub outcomes: Vec<Port>,
    /// Conditioned state after each click.
    pub states: Vec<FockVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Localization {
    pub trajectory: Trajectory,
    /// Posterior before any click and after each one.
    pub posteriors: Vec<PhasePosterior>,
    /// Visibility before any click and after each one.
    pub visibilities: Vec<f64>,
    /// One draw from the final posterior.
    pub phase_sample: f64,
}

impl Localization {
    pub fn entropies(&self) -> Vec<f64> {
        self.posteriors.iter().map(PhasePosterior::entropy).collect()
    }
}

pub fn run_localization(n: usize, detections: usize, seed: u64) -> Result<Localization> {
    run_localization_with_grid(n, detections, seed, DEFAULT_GRID)
}

/// Start from `|n⟩|n⟩` and record `detections` clicks. At least one photon
/// must remain at the end.
pub fn run_localization_with_grid(n: usize, detections: usize, seed: u64, grid: usize) -> Result<Localization> {
    if n == 0 || detections >= 2 * n {
        return Err(FockError::InvalidParameter(format!(
            "need 1 ≤ n and detections ≤ 2n − 1, got n = {n}, detections = {detections}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = fock_state(&[n, n], 2 * n)?;
    let mut outcomes = Vec::with_capacity(detections);
    let mut states = Vec::with_capacity(detections);
    let mut posteriors = vec![PhasePosterior::from_state(&psi, grid)?];
    let mut visibilities = vec![visibility(&State::Pure(psi.clone()), (0, 1))?];
    for _ in 0..detections {
        let click = detect_one(&State::Pure(psi), &mut rng)?;
        psi = match click.state {
            State::Pure(v) => v,
            State::Mixed(_) => unreachable!("pure input yields pure branches"),
        };
        outcomes.push(click.port);
        posteriors.push(PhasePosterior::from_state(&psi, grid)?);
        visibilities.push(visibility(&State::Pure(psi.clone()), (0, 1))?);
        states.push(psi.clone());
    }
    let phase_sample = posteriors.last().unwrap().sample(&mut rng);
    Ok(Localization {
        trajectory: Trajectory { photons_per_mode: n, seed, outcomes, states },
        posteriors,
        visibilities,
        phase_sample,
    })
}

/// Mean and standard error per click count over an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepStatistics {
    pub mean: Vec<f64>,
    pub standard_error: Vec<f64>,
}

fn step_statistics(rows: &[Vec<f64>]) -> StepStatistics {
    let steps = rows.first().map_or(0, Vec::len);
    let count = rows.len() as f64;
    let mut mean = vec![0.0; steps];
    let mut se = vec![0.0; steps];
    for k in 0..steps {
        let m = rows.iter().map(|r| r[k]).sum::<f64>() / count;
        let var = rows.iter().map(|r| (r[k] - m).powi(2)).sum::<f64>() / (count - 1.0).max(1.0);
        mean[k] = m;
        se[k] = (var / count).sqrt();
    }
    StepStatistics { mean, standard_error: se }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub seeds: Vec<u64>,
    pub visibility: StepStatistics,
    pub entropy: StepStatistics,
    /// Per step `k ≥ 1`: mean and standard error of `H_k − H_{k−1}` paired by seed.
    pub entropy_change: StepStatistics,
    pub first_c: usize,
    pub phase_samples: Vec<f64>,
    pub peaks: Vec<f64>,
}

/// Independent trajectories, one per seed; results are ordered by seed list.
pub fn run_ensemble(n: usize, detections: usize, seeds: &[u64], grid: usize) -> Result<EnsembleSummary> {
    let runs: Vec<Localization> =
        seeds.par_iter().map(|&s| run_localization_with_grid(n, detections, s, grid)).collect::<Result<_>>()?;
    let vis: Vec<Vec<f64>> = runs.iter().map(|r| r.visibilities.clone()).collect();
    let ent: Vec<Vec<f64>> = runs.iter().map(Localization::entropies).collect();
    let diffs: Vec<Vec<f64>> = ent.iter().map(|e| e.windows(2).map(|w| w[1] - w[0]).collect()).collect();
    Ok(EnsembleSummary {
        seeds: seeds.to_vec(),
        visibility: step_statistics(&vis),
        entropy: step_statistics(&ent),
        entropy_change: step_statistics(&diffs),
        first_c: runs.iter().filter(|r| r.trajectory.outcomes.first() == Some(&Port::C)).count(),
        phase_samples: runs.iter().map(|r| r.phase_sample).collect(),
        peaks: runs.iter().map(|r| r.posteriors.last().unwrap().peak()).collect(),
    })
}

impl EnsembleSummary {
    /// Steps whose mean entropy rises by more than `sigmas` paired standard errors.
    pub fn entropy_increases(&self, sigmas: f64) -> Vec<usize> {
        let ch = &self.entropy_change;
        (0..ch.mean.len()).filter(|&k| ch.mean[k] > sigmas * ch.standard_error[k]).map(|k| k + 1).collect()
    }
}

/// One-sample Kolmogorov–Smirnov test against the uniform law on `[0, 2π)`.
/// Returns the statistic `D` and its asymptotic p-value.
pub fn ks_uniform_phase(samples: &[f64]) -> (f64, f64) {
    let mut xs: Vec<f64> = samples.iter().map(|x| x / TAU).collect();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max);
    let lambda = (n.sqrt() + 0.12 + 0.11 / n.sqrt()) * d;
    (d, kolmogorov_survival(lambda))
}

fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let term = (-2.0 * (j * j) as f64 * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Maximum posterior entropy on a grid of `grid` points.
pub fn uniform_entropy(grid: usize) -> f64 {
    (grid as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::random;
    use crate::linalg::MaxAbs;
    use crate::optics::{apply_to_vector, split_fock, PhaseShifter};
    use rand_chacha::ChaCha8Rng;

    fn pure(v: FockVector) -> State {
        State::Pure(v)
    }

    #[test]
    fn first_click_is_unbiased() {
        for n in 1..6 {
            let [c, d] = branches(&pure(fock_state(&[n, n], 2 * n).unwrap())).unwrap();
            assert_eq!(c.probability, 0.5);
            assert_eq!(d.probability, 0.5);
        }
    }

    #[test]
    fn first_click_state() {
        let n = 4;
        let [c, d] = branches(&pure(fock_state(&[n, n], 2 * n).unwrap())).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (branch, sign) in [(c, -1.0), (d, 1.0)] {
            let State::Pure(v) = branch.state else { panic!() };
            assert!((v.amplitude(&[n - 1, n]).re - s).abs() < 1e-12);
            assert!((v.amplitude(&[n, n - 1]).re - sign * s).abs() < 1e-12);
            assert!((v.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_photon_empties_the_modes() {
        let [c, d] = branches(&pure(fock_state(&[1, 0], 1).unwrap())).unwrap();
        assert!((c.probability - 0.5).abs() < 1e-15);
        assert!((d.probability - 0.5).abs() < 1e-15);
        let State::Pure(v) = c.state else { panic!() };
        assert!((v.amplitude(&[0, 0]).norm() - 1.0).abs() < 1e-15);
        let vac = fock_state(&[0, 0], 1).unwrap();
        assert!(matches!(branches(&pure(vac)), Err(FockError::Vacuum)));
    }

    #[test]
    fn photon_number_drops_by_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut psi = fock_state(&[3, 3], 6).unwrap();
        for left in (1..6).rev() {
            let b = detect_one(&pure(psi), &mut rng).unwrap();
            let State::Pure(v) = b.state else { panic!() };
            let n = v.expectation(&Operator::total_number(2)).unwrap().re;
            assert!((n - left as f64).abs() < 1e-10);
            assert!((v.norm_sqr() - 1.0).abs() < 1e-10);
            psi = v;
        }
    }

    fn channel_oracle(rho: &DensityMatrix) -> DensityMatrix {
        let basis = rho.basis();
        let c = Port::C.jump_operator().matrix(basis);
        let d = Port::D.jump_operator().matrix(basis);
        let m = &c * rho.matrix() * c.adjoint() + &d * rho.matrix() * d.adjoint();
        DensityMatrix::from_matrix(basis.clone(), m).unwrap()
    }

    #[test]
    fn averaged_clicks_match_channel() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for cutoff in 1..=3 {
            let basis = std::sync::Arc::new(crate::fock::FockBasis::new(2, cutoff).unwrap());
            for trial in 0..10 {
                let rho = if trial % 2 == 0 {
                    random::pure_state(basis.clone(), &mut rng).to_density()
                } else {
                    random::density_matrix(basis.clone(), 3, &mut rng)
                };
                if rho.element(&[0, 0], &[0, 0]).re > 0.999 {
                    continue;
                }
                let bs = branches(&State::Mixed(rho.clone())).unwrap();
                assert!((bs[0].probability + bs[1].probability - 1.0).abs() < 1e-12);
                let mut avg = nalgebra::DMatrix::zeros(basis.dim(), basis.dim());
                for b in &bs {
                    avg += b.state.to_density().matrix() * Complex64::new(b.probability, 0.0);
                }
                let want = channel_oracle(&rho);
                assert!((&avg - want.matrix()).max_abs() < 1e-12);
                assert!(nonselective_channel(&rho).unwrap().max_abs_diff(&want).unwrap() < 1e-12);
                // the port basis does not matter once outcomes are discarded
                let a = Operator::annihilate(0).matrix(&basis);
                let b = Operator::annihilate(1).matrix(&basis);
                let local = DensityMatrix::from_matrix(
                    basis.clone(),
                    &a * rho.matrix() * a.adjoint() + &b * rho.matrix() * b.adjoint(),
                )
                .unwrap();
                assert!(local.max_abs_diff(&want).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn pure_and_mixed_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let basis = std::sync::Arc::new(crate::fock::FockBasis::new(2, 4).unwrap());
        let psi = random::pure_state(basis.clone(), &mut rng);
        let p = branches(&pure(psi.clone())).unwrap();
        let m = branches(&State::Mixed(psi.to_density())).unwrap();
        for (x, y) in p.iter().zip(&m) {
            assert!((x.probability - y.probability).abs() < 1e-12);
            assert!(x.state.to_density().max_abs_diff(&y.state.to_density()).unwrap() < 1e-12);
        }
    }

    fn sweep_visibility(psi: &FockVector) -> f64 {
        let d = Port::D.jump_operator();
        let intensity = d.adjoint().compose(&d);
        let vals: Vec<f64> = (0..720)
            .map(|k| {
                let ps = PhaseShifter::new(0, TAU * k as f64 / 720.0).unwrap();
                apply_to_vector(psi, &ps.into()).unwrap().expectation(&intensity).unwrap().re
            })
            .collect();
        let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
        let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
        (hi - lo) / (hi + lo)
    }

    #[test]
    fn visibility_of_split_fock_state() {
        for n in [1, 3, 6] {
            for phi in [0.0, 0.4, 2.5] {
                let psi = split_fock(n, 0.5, phi, n).unwrap();
                let v = visibility(&pure(psi.clone()), (0, 1)).unwrap();
                assert!((v - 1.0).abs() < 1e-9);
                assert!((sweep_visibility(&psi) - v).abs() < 1e-4);
            }
        }
        let psi = split_fock(4, 0.2, 1.0, 4).unwrap();
        let v = visibility(&pure(psi.clone()), (0, 1)).unwrap();
        assert!((v - 2.0 * (0.2f64 * 0.8).sqrt()).abs() < 1e-12);
        assert!((sweep_visibility(&psi) - v).abs() < 1e-4);
    }

    #[test]
    fn visibility_vanishes_without_coherence() {
        let nn = fock_state(&[3, 3], 6).unwrap();
        assert_eq!(visibility(&pure(nn), (0, 1)).unwrap(), 0.0);
        let p = crate::fock::poisson_mixture(1.0, 16).unwrap();
        let q = crate::fock::poisson_mixture(2.0, 18).unwrap();
        let (rho, _) = crate::fock::tensor_truncated(&State::Mixed(p), &State::Mixed(q), 20).unwrap();
        assert!(visibility(&rho, (0, 1)).unwrap() < 1e-15);
        assert!(matches!(visibility(&pure(fock_state(&[0, 0], 2).unwrap()), (0, 1)), Err(FockError::Vacuum)));
    }

    #[test]
    fn posterior_starts_uniform() {
        let loc = run_localization(5, 0, 1).unwrap();
        let p = &loc.posteriors[0];
        assert!(p.weights.iter().all(|w| (w - 1.0 / 256.0).abs() < 1e-15));
        assert!((p.entropy() - uniform_entropy(256)).abs() < 1e-12);
        assert!(run_localization(5, 10, 1).is_err());
        assert!(run_localization(5, 9, 1).is_ok());
    }

    #[test]
    fn posterior_of_phase_state_peaks_at_its_phase() {
        let theta = TAU * 40.0 / 256.0;
        let psi = split_fock(8, 0.5, 0.0, 8).unwrap();
        let shifted = apply_to_vector(&psi, &PhaseShifter::new(0, theta).unwrap().into()).unwrap();
        let p = PhasePosterior::from_state(&shifted, 256).unwrap();
        assert!((p.peak() - theta).abs() < 1e-12);
        assert!((p.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trajectories_are_reproducible() {
        let a = run_localization(6, 9, 42).unwrap();
        let b = run_localization(6, 9, 42).unwrap();
        assert_eq!(a, b);
        let c = run_localization(6, 9, 43).unwrap();
        assert_eq!(c.trajectory.outcomes.len(), 9);
        assert_eq!(a.trajectory.states.len(), 9);
        assert_eq!(a.posteriors.len(), 10);
    }

    #[test]
    fn ks_statistic() {
        let even: Vec<f64> = (0..200).map(|i| TAU * (i as f64 + 0.5) / 200.0).collect();
        let (d, p) = ks_uniform_phase(&even);
        assert!(d < 0.01 && p > 0.99);
        let bunched: Vec<f64> = (0..200).map(|i| 0.5 * i as f64 / 200.0).collect();
        let (_, p) = ks_uniform_phase(&bunched);
        assert!(p < 1e-6);
    }
}
