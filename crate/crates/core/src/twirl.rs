//! Group averages over phase and rotation references.
//!
//! The U(1) twirls are computed as exact sector projections: averaging
//! `e^{iθ N} ρ e^{−iθ N}` over θ keeps exactly the matrix elements whose bra
//! and ket have equal `N`. No quadrature is involved; [`oracle`] holds a
//! discrete-angle average used only to cross-check.

use std::sync::Arc;

use nalgebra::{DMatrix, Matrix2};

use crate::linalg::MaxAbs;
use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::fock::{coherent_product, poisson, DensityMatrix, FockBasis, FockVector, Operator, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwirlKind {
    /// Average over `e^{iθ N_i}` for one mode.
    SingleMode(usize),
    /// Average over `V(θ) = Π_i e^{iθ N_i}`.
    Collective,
    /// Average over all rotations of a spin-1/2.
    Su2SpinHalf,
}

fn project(rho: &DensityMatrix, label: impl Fn(usize) -> usize) -> DensityMatrix {
    let dim = rho.dim();
    let labels: Vec<usize> = (0..dim).map(label).collect();
    let src = rho.matrix();
    let m = DMatrix::from_fn(dim, dim, |r, c| if labels[r] == labels[c] { src[(r, c)] } else { Complex64::new(0.0, 0.0) });
    DensityMatrix::from_parts(rho.basis().clone(), m, rho.tail_mass())
}

/// Single-mode U(1) twirl: removes coherence between different photon
/// numbers of `mode`, leaving every other element untouched.
pub fn u1_twirl(rho: &DensityMatrix, mode: usize) -> Result<DensityMatrix> {
    if mode >= rho.num_modes() {
        return Err(FockError::InvalidMode { mode, num_modes: rho.num_modes() });
    }
    let basis = rho.basis().clone();
    Ok(project(rho, |i| basis.occupation(i)[mode]))
}

/// Collective U(1) twirl: removes coherence between different total photon
/// numbers only.
pub fn collective_twirl(rho: &DensityMatrix) -> DensityMatrix {
    let basis = rho.basis().clone();
    project(rho, |i| basis.total(i))
}

pub fn twirl(rho: &DensityMatrix, kind: TwirlKind) -> Result<DensityMatrix> {
    match kind {
        TwirlKind::SingleMode(m) => u1_twirl(rho, m),
        TwirlKind::Collective => Ok(collective_twirl(rho)),
        TwirlKind::Su2SpinHalf => Err(FockError::InvalidParameter(
            "the spin-1/2 average acts on 2×2 matrices; use su2_twirl_spin_half".into(),
        )),
    }
}

/// Rotation average of a spin-1/2 state. The spin-1/2 representation is
/// irreducible, so the average of any trace-one state is `I/2`.
pub fn su2_twirl_spin_half(rho: &Matrix2<Complex64>) -> Result<Matrix2<Complex64>> {
    let tol = Tolerances::default();
    if (rho - rho.adjoint()).max_abs() > tol.construction {
        return Err(FockError::Invariant("qubit state is not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol.derived || tr.im.abs() > tol.derived {
        return Err(FockError::Invariant(format!("qubit trace {tr} differs from 1")));
    }
    // 2×2 Hermitian: both eigenvalues ≥ 0 iff det ≥ 0 (trace is 1)
    let det = (rho[(0, 0)] * rho[(1, 1)] - rho[(0, 1)] * rho[(1, 0)]).re;
    if det < -tol.derived {
        return Err(FockError::Invariant(format!("qubit state has a negative eigenvalue (det {det:e})")));
    }
    Ok(Matrix2::identity() * Complex64::new(0.5, 0.0))
}

/// One total-number block of a collectively twirled pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub total: usize,
    pub weight: f64,
    /// Normalized block vector as sorted `(basis index, amplitude)` pairs.
    pub amplitudes: Vec<(usize, Complex64)>,
}

/// Collective twirl of a pure state kept in block form
/// `Σ_n w_n |v_n⟩⟨v_n|`. This is the same density matrix as
/// [`collective_twirl`] of `|ψ⟩⟨ψ|`, without materializing it, so it scales
/// to the cutoffs needed for strong local oscillators.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorMixture {
    basis: Arc<FockBasis>,
    sectors: Vec<Sector>,
    tail_mass: f64,
}

impl SectorMixture {
    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// `Tr(ρ O)`.
    pub fn expectation(&self, op: &Operator) -> Complex64 {
        self.sectors
            .iter()
            .map(|s| {
                let image = op.apply_sparse(&self.basis, &s.amplitudes);
                Complex64::new(s.weight, 0.0) * sparse_inner(&s.amplitudes, &image)
            })
            .sum()
    }

    /// `Tr(ρ O^k)` for Hermitian `O`, as `⟨O^{⌊k/2⌋} v|O^{⌈k/2⌉} v⟩` per block.
    pub fn moment(&self, op: &Operator, k: u32) -> f64 {
        self.sectors
            .iter()
            .map(|s| {
                let mut lo = s.amplitudes.clone();
                for _ in 0..k / 2 {
                    lo = op.apply_sparse(&self.basis, &lo);
                }
                let hi = if k % 2 == 0 { lo.clone() } else { op.apply_sparse(&self.basis, &lo) };
                s.weight * sparse_inner(&lo, &hi).re
            })
            .sum()
    }

    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.basis.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for s in &self.sectors {
            for &(i, a) in &s.amplitudes {
                for &(j, b) in &s.amplitudes {
                    m[(i, j)] += a * b.conj() * s.weight;
                }
            }
        }
        DensityMatrix::from_parts(self.basis.clone(), m, self.tail_mass)
    }
}

fn sparse_inner(a: &[(usize, Complex64)], b: &[(usize, Complex64)]) -> Complex64 {
    // both sorted by index
    let (mut i, mut j) = (0, 0);
    let mut acc = Complex64::new(0.0, 0.0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a[i].1.conj() * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Collective twirl of `|ψ⟩⟨ψ|` in block form.
pub fn collective_twirl_pure(psi: &FockVector) -> SectorMixture {
    let basis = psi.basis().clone();
    let mut buckets: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); basis.cutoff() + 1];
    for (i, &a) in psi.amplitudes().iter().enumerate() {
        if a.norm_sqr() > 0.0 {
            buckets[basis.total(i)].push((i, a));
        }
    }
    let sectors = buckets
        .into_iter()
        .enumerate()
        .filter_map(|(total, mut amps)| {
            let weight: f64 = amps.iter().map(|(_, a)| a.norm_sqr()).sum();
            if weight == 0.0 {
                return None;
            }
            let norm = weight.sqrt();
            for (_, a) in &mut amps {
                *a /= norm;
            }
            Some(Sector { total, weight, amplitudes: amps })
        })
        .collect();
    SectorMixture { basis, sectors, tail_mass: psi.tail_mass() }
}

/// Poisson mixture of split Fock states, `Σ_n p_n |ψ_{n,φ}⟩⟨ψ_{n,φ}|`, with
/// `p_n` Poisson of mean `nbar` truncated at `cutoff` and renormalized.
pub fn split_mixture(nbar: f64, transmission: f64, phi: f64, cutoff: usize) -> Result<DensityMatrix> {
    let limit = Tolerances::default().tail;
    let tail = poisson::tail(nbar, cutoff);
    if tail > limit {
        return Err(FockError::Truncation { tail, limit, cutoff });
    }
    let basis = Arc::new(FockBasis::new(2, cutoff)?);
    let p = poisson::pmf(nbar, cutoff);
    let dim = basis.dim();
    let mut m = DMatrix::zeros(dim, dim);
    for (n, &pn) in p.iter().enumerate() {
        let psi = crate::optics::split_fock(n, transmission, phi, cutoff)?;
        let idx: Vec<usize> = (0..=n).map(|k| basis.index_of(&[k, n - k]).expect("fits")).collect();
        for &i in &idx {
            for &j in &idx {
                m[(i, j)] += psi.amplitudes()[i] * psi.amplitudes()[j].conj() * pn;
            }
        }
    }
    DensityMatrix::with_tail(basis, m, tail)
}

/// Candidate relations between the splitting ratio and the coherent
/// amplitudes, each written as a function of `T` to compare with
/// `|α|²/|β|²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioRelation {
    /// `T / (1 − T)`: `T` is the fraction routed into the signal mode.
    SignalFraction,
    /// `(1 − T) / T`.
    ReferenceFraction,
    /// `(1 − T²) / T²`.
    SquaredTransmission,
}

impl RatioRelation {
    pub const ALL: [RatioRelation; 3] =
        [RatioRelation::SignalFraction, RatioRelation::ReferenceFraction, RatioRelation::SquaredTransmission];

    pub fn ratio(self, t: f64) -> f64 {
        match self {
            RatioRelation::SignalFraction => t / (1.0 - t),
            RatioRelation::ReferenceFraction => (1.0 - t) / t,
            RatioRelation::SquaredTransmission => (1.0 - t * t) / (t * t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RatioRelation::SignalFraction => "T/(1-T)",
            RatioRelation::ReferenceFraction => "(1-T)/T",
            RatioRelation::SquaredTransmission => "(1-T^2)/T^2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub cutoff: usize,
    pub fitted_transmission: f64,
    pub fitted_phase: f64,
    /// `max |collective_twirl(|α⟩⟨α|⊗|β⟩⟨β|) − Σ p_n |ψ_{n,φ}⟩⟨ψ_{n,φ}||`.
    pub max_abs_diff: f64,
    /// `(relation, |relation(T) − |α|²/|β|²|)` for each candidate.
    pub relation_residuals: Vec<(RatioRelation, f64)>,
    pub tail_mass: f64,
}

impl EquivalenceReport {
    /// The candidate relation closest to the measured amplitude ratio.
    pub fn best_relation(&self) -> RatioRelation {
        self.relation_residuals
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|r| r.0)
            .expect("three candidates")
    }
}

/// Twirls `|α⟩⟨α|⊗|β⟩⟨β|`, fits the splitting ratio and phase from the
/// twirled state's moments (`T = ⟨N_a⟩/⟨N_a + N_b⟩`, `φ = arg⟨a†b⟩`), and
/// compares it elementwise to the Poisson mixture of split Fock states.
pub fn collective_equivalence(alpha: Complex64, beta: Complex64, cutoff: usize) -> Result<EquivalenceReport> {
    if beta.norm() == 0.0 {
        return Err(FockError::InvalidParameter("reference amplitude must be nonzero".into()));
    }
    let product = coherent_product(&[alpha, beta], cutoff)?.to_density();
    let twirled = collective_twirl(&product);
    let na = twirled.expectation(&Operator::number(0))?.re;
    let ntot = twirled.expectation(&Operator::total_number(2))?.re;
    let coherence = twirled.expectation(&Operator::create(0).compose(&Operator::annihilate(1)))?;
    let t = na / ntot;
    let phi = coherence.arg();
    let nbar = alpha.norm_sqr() + beta.norm_sqr();
    let mixture = split_mixture(nbar, t, phi, cutoff)?;
    let ratio = alpha.norm_sqr() / beta.norm_sqr();
    Ok(EquivalenceReport {
        alpha,
        beta,
        cutoff,
        fitted_transmission: t,
        fitted_phase: phi,
        max_abs_diff: twirled.max_abs_diff(&mixture)?,
        relation_residuals: RatioRelation::ALL.iter().map(|&r| (r, (r.ratio(t) - ratio).abs())).collect(),
        tail_mass: product.tail_mass(),
    })
}

/// Discrete-angle averages, kept only to cross-check the exact projections.
pub mod oracle {
    use super::*;
    use crate::optics::{apply_to_density, PhaseShifter};

    /// `(1/K) Σ_k V(θ_k) ρ V(θ_k)†` with `θ_k = 2πk/K` and `V(θ)` the phase
    /// rotation of the listed modes. Exact when `K` exceeds every photon
    /// number difference present.
    pub fn phase_average(rho: &DensityMatrix, modes: &[usize], points: usize) -> Result<DensityMatrix> {
        let dim = rho.dim();
        let mut acc = DMatrix::zeros(dim, dim);
        for k in 0..points {
            let theta = std::f64::consts::TAU * k as f64 / points as f64;
            let mut r = rho.clone();
            for &m in modes {
                r = apply_to_density(&r, &PhaseShifter::new(m, theta)?.into())?;
            }
            acc += r.matrix();
        }
        acc /= Complex64::new(points as f64, 0.0);
        Ok(DensityMatrix::from_parts(rho.basis().clone(), acc, rho.tail_mass()))
    }

    /// Pauli-group average of a qubit state, a finite unitary 1-design.
    pub fn pauli_average(rho: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let paulis = [
            Matrix2::new(l, o, o, l),
            Matrix2::new(o, l, l, o),
            Matrix2::new(o, -i, i, o),
            Matrix2::new(l, o, o, -l),
        ];
        paulis.iter().map(|p| p * rho * p.adjoint()).sum::<Matrix2<Complex64>>() * Complex64::new(0.25, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, fock_state, partial_trace, poisson_mixture, random};
    use crate::optics::{apply_to_density, split_fock, BeamSplitter, Element, LinearNetwork, PhaseShifter};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn twirled_coherent_state_is_poisson_mixture() {
        for alpha in [c(0.5, 0.0), c(1.0, 0.0), c(0.0, 2.0), c(1.0, 1.0)] {
            let cutoff = poisson::min_cutoff(alpha.norm_sqr(), 1e-12);
            let rho = coherent_state(alpha, cutoff).unwrap().to_density();
            let tw = u1_twirl(&rho, 0).unwrap();
            let p = poisson_mixture(alpha.norm_sqr(), cutoff).unwrap();
            assert!(tw.max_abs_diff(&p).unwrap() < 1e-12, "{alpha}");
        }
    }

    #[test]
    fn number_states_are_fixed_points() {
        let r = fock_state(&[3], 6).unwrap().to_density();
        assert_eq!(u1_twirl(&r, 0).unwrap(), r);
        let s = split_fock(4, 0.3, 0.7, 6).unwrap().to_density();
        assert!(collective_twirl(&s).max_abs_diff(&s).unwrap() < 1e-15);
        assert!(u1_twirl(&r, 1).is_err());
    }

    #[test]
    fn exact_projection_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let basis = Arc::new(FockBasis::new(2, 5).unwrap());
        let rho = random::density_matrix(basis, 3, &mut rng);
        let single = oracle::phase_average(&rho, &[1], 64).unwrap();
        assert!(u1_twirl(&rho, 1).unwrap().max_abs_diff(&single).unwrap() < 1e-13);
        let coll = oracle::phase_average(&rho, &[0, 1], 64).unwrap();
        assert!(collective_twirl(&rho).max_abs_diff(&coll).unwrap() < 1e-13);
    }

    #[test]
    fn twirls_are_idempotent_trace_preserving_and_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let basis = Arc::new(FockBasis::new(2, 4).unwrap());
        let tol = Tolerances::default();
        for _ in 0..100 {
            let rank = rng.random_range(1..=4);
            let rho = random::density_matrix(basis.clone(), rank, &mut rng);
            let once = u1_twirl(&rho, 0).unwrap();
            assert!(u1_twirl(&once, 0).unwrap().max_abs_diff(&once).unwrap() < 1e-14);
            once.check_invariants(&tol).unwrap();
            let coll = collective_twirl(&rho);
            assert!(collective_twirl(&coll).max_abs_diff(&coll).unwrap() < 1e-14);
            coll.check_invariants(&tol).unwrap();
        }
    }

    #[test]
    fn twirls_are_completely_positive() {
        // Choi matrix of the single-mode twirl on a 3-level mode, extended
        // by an identical reference mode, must be positive semidefinite
        let basis = Arc::new(FockBasis::new(2, 4).unwrap());
        let mut amps = vec![c(0.0, 0.0); basis.dim()];
        for n in 0..=2 {
            amps[basis.index_of(&[n, n]).unwrap()] = c(1.0, 0.0);
        }
        let max_ent = FockVector::from_amplitudes(basis, amps).unwrap().to_density();
        let choi = u1_twirl(&max_ent, 0).unwrap();
        assert!(choi.eigenvalues().iter().all(|&e| e > -1e-12));
        let choi = collective_twirl(&max_ent);
        assert!(choi.eigenvalues().iter().all(|&e| e > -1e-12));
    }

    #[test]
    fn collective_twirl_commutes_with_passive_networks() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let basis = Arc::new(FockBasis::new(3, 3).unwrap());
        for _ in 0..20 {
            let rho = random::density_matrix(basis.clone(), 2, &mut rng);
            let elements: Vec<Element> = (0..4)
                .flat_map(|k| {
                    let i = k % 3;
                    [
                        BeamSplitter::new(i, (i + 1) % 3, rng.random::<f64>()).unwrap().into(),
                        PhaseShifter::new(i, rng.random::<f64>() * 6.0).unwrap().into(),
                    ]
                })
                .collect();
            let net = LinearNetwork::new(3, elements).unwrap();
            let u = net.unitary(&basis).unwrap();
            let moved = DensityMatrix::from_parts(basis.clone(), &u * rho.matrix() * u.adjoint(), 0.0);
            let lhs = collective_twirl(&moved);
            let tw = collective_twirl(&rho);
            let rhs = &u * tw.matrix() * u.adjoint();
            assert!((lhs.matrix() - rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn invariant_observables_ignore_the_collective_twirl() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let basis = Arc::new(FockBasis::new(2, 5).unwrap());
        let hop = Operator::create(0).compose(&Operator::annihilate(1)) + Operator::create(1).compose(&Operator::annihilate(0));
        for _ in 0..20 {
            let rho = random::density_matrix(basis.clone(), 3, &mut rng);
            let tw = collective_twirl(&rho);
            let a = rho.expectation(&hop).unwrap();
            let b = tw.expectation(&hop).unwrap();
            assert!((a - b).norm() < 1e-12);
            // random observable made invariant by twirling it as a matrix
            let g = random::density_matrix(basis.clone(), 4, &mut rng);
            let inv = collective_twirl(&g);
            let a = rho.expectation_matrix(inv.matrix()).unwrap();
            let b = tw.expectation_matrix(inv.matrix()).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn spin_half_average_is_maximally_mixed() {
        let half = Matrix2::identity() * c(0.5, 0.0);
        let up = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(su2_twirl_spin_half(&up).unwrap(), half);
        assert_eq!(su2_twirl_spin_half(&half).unwrap(), half);
        assert_eq!(oracle::pauli_average(&up), half);
        let bad = Matrix2::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        assert!(su2_twirl_spin_half(&bad).is_err());
    }

    #[test]
    fn sector_mixture_matches_dense_twirl() {
        let psi = coherent_product(&[c(0.7, 0.2), c(-1.1, 0.4)], 22).unwrap();
        let dense = collective_twirl(&psi.to_density());
        let blocks = collective_twirl_pure(&psi);
        assert!(blocks.to_density().max_abs_diff(&dense).unwrap() < 1e-15);
        let hop = Operator::create(0).compose(&Operator::annihilate(1)) + Operator::create(1).compose(&Operator::annihilate(0));
        let a = blocks.expectation(&hop);
        let b = dense.expectation(&hop).unwrap();
        assert!((a - b).norm() < 1e-13);
        let sq = hop.compose(&hop);
        assert!((blocks.moment(&hop, 2) - dense.expectation(&sq).unwrap().re).abs() < 1e-12);
        assert!((blocks.moment(&hop, 3) - dense.expectation(&sq.compose(&hop)).unwrap().re).abs() < 1e-11);
    }

    #[test]
    fn reduced_state_of_split_mixture_is_poissonian() {
        // summation oracle: Σ_n p_n(n̄) C(n,m) T^m (1−T)^{n−m} = p_m(T n̄)
        let (nbar, t, cutoff) = (2.0, 0.3, 30);
        let rho = split_mixture(nbar, t, 0.9, cutoff).unwrap();
        let ra = partial_trace(&rho, &[0]).unwrap();
        let p = poisson::pmf(nbar, cutoff);
        let lf = poisson::ln_factorials(cutoff);
        for m in 0..=10 {
            let direct: f64 = (m..=cutoff)
                .map(|n| p[n] * (lf[n] - lf[m] - lf[n - m]).exp() * t.powi(m as i32) * (1.0 - t).powi((n - m) as i32))
                .sum();
            assert!((ra.element(&[m], &[m]).re - direct).abs() < 1e-12);
            assert!((direct - poisson::pmf(t * nbar, m)[m]).abs() < 1e-12);
            for k in 0..m {
                assert_eq!(ra.element(&[m], &[k]), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn reduced_twirled_product_is_diagonal_poissonian() {
        let (alpha, beta) = (c(1.0, 0.0), c(2.0, 0.0));
        let cutoff = poisson::min_cutoff(5.0, 1e-12);
        let tw = collective_twirl(&coherent_product(&[alpha, beta], cutoff).unwrap().to_density());
        let ra = partial_trace(&tw, &[0]).unwrap();
        let p = poisson::pmf(1.0, 12);
        for m in 0..=12 {
            for k in 0..=12 {
                let want = if m == k { p[m] } else { 0.0 };
                assert!((ra.element(&[m], &[k]) - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn equivalence_report_identifies_the_relation() {
        let r = collective_equivalence(c(1.0, 0.0), c(2.0, 0.0), poisson::min_cutoff(5.0, 1e-12)).unwrap();
        assert!(r.max_abs_diff < 1e-10);
        assert!((r.fitted_transmission - 0.2).abs() < 1e-12);
        assert_eq!(r.best_relation(), RatioRelation::SignalFraction);
        assert!(r.fitted_phase.abs() < 1e-12);
    }

    #[test]
    fn split_state_is_unchanged_by_shifting_after_twirl() {
        let rho = split_fock(3, 0.5, 0.2, 4).unwrap().to_density();
        let shifted = apply_to_density(&rho, &PhaseShifter::new(0, 1.0).unwrap().into()).unwrap();
        assert!(collective_twirl(&shifted).max_abs_diff(&shifted).unwrap() < 1e-15);
    }
}
