//! Pure and mixed states on a truncated Fock space.
//!
//! Every constructor renormalizes after truncation and keeps the discarded
//! probability in `tail_mass`, so approximation error is auditable.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::linalg::MaxAbs;
use num_complex::Complex64;

use super::basis::FockBasis;
use super::ops::Operator;
use super::poisson;
use super::Tolerances;
use crate::error::{FockError, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    basis: Arc<FockBasis>,
    amplitudes: Vec<Complex64>,
    tail_mass: f64,
}

impl FockVector {
    /// Normalizes `amplitudes`; fails on a zero vector or length mismatch.
    pub fn from_amplitudes(basis: Arc<FockBasis>, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tail(basis, amplitudes, 0.0)
    }

    pub(crate) fn with_tail(basis: Arc<FockBasis>, mut amplitudes: Vec<Complex64>, tail_mass: f64) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(FockError::DimensionMismatch { expected: basis.dim(), actual: amplitudes.len() });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(FockError::Invariant("cannot normalize a zero or non-finite vector".into()));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(FockVector { basis, amplitudes, tail_mass })
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn num_modes(&self) -> usize {
        self.basis.num_modes()
    }

    pub fn cutoff(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude on an occupation tuple; zero outside the space.
    pub fn amplitude(&self, occupations: &[usize]) -> Complex64 {
        self.basis.index_of(occupations).map_or(ZERO, |i| self.amplitudes[i])
    }

    /// Probability discarded by truncation before renormalization.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        if !self.basis.same_shape(&other.basis) {
            return Err(FockError::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `⟨ψ|O|ψ⟩`.
    pub fn expectation(&self, op: &Operator) -> Result<Complex64> {
        self.check_operator(op)?;
        let image = op.apply(&self.basis, &self.amplitudes);
        Ok(self.amplitudes.iter().zip(&image).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn expectation_matrix(&self, observable: &DMatrix<Complex64>) -> Result<Complex64> {
        let dim = self.dim();
        if observable.nrows() != dim || observable.ncols() != dim {
            return Err(FockError::DimensionMismatch { expected: dim, actual: observable.nrows() });
        }
        let psi = nalgebra::DVector::from_column_slice(&self.amplitudes);
        Ok(psi.dotc(&(observable * &psi)))
    }

    /// Unnormalized image `O ψ`.
    pub fn apply(&self, op: &Operator) -> Result<Vec<Complex64>> {
        self.check_operator(op)?;
        Ok(op.apply(&self.basis, &self.amplitudes))
    }

    fn check_operator(&self, op: &Operator) -> Result<()> {
        match op.max_mode() {
            Some(m) if m >= self.num_modes() => Err(FockError::InvalidMode { mode: m, num_modes: self.num_modes() }),
            _ => Ok(()),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        let psi = nalgebra::DVector::from_column_slice(&self.amplitudes);
        DensityMatrix { basis: self.basis.clone(), matrix: &psi * psi.adjoint(), tail_mass: self.tail_mass }
    }

    pub fn check_invariants(&self, tol: &Tolerances) -> Result<()> {
        let dev = (self.norm_sqr() - 1.0).abs();
        if dev > tol.construction {
            return Err(FockError::Invariant(format!("norm deviates from 1 by {dev:e}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    basis: Arc<FockBasis>,
    matrix: DMatrix<Complex64>,
    tail_mass: f64,
}

impl DensityMatrix {
    /// Renormalizes the trace; shape and a positive trace are required.
    /// Use [`DensityMatrix::check_invariants`] for the full validity check.
    pub fn from_matrix(basis: Arc<FockBasis>, matrix: DMatrix<Complex64>) -> Result<Self> {
        Self::with_tail(basis, matrix, 0.0)
    }

    pub(crate) fn with_tail(basis: Arc<FockBasis>, mut matrix: DMatrix<Complex64>, tail_mass: f64) -> Result<Self> {
        let dim = basis.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(FockError::DimensionMismatch { expected: dim, actual: matrix.nrows() });
        }
        let tr = matrix.trace().re;
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(FockError::Invariant(format!("trace {tr} is not positive")));
        }
        matrix /= Complex64::new(tr, 0.0);
        Ok(DensityMatrix { basis, matrix, tail_mass })
    }

    pub(crate) fn from_parts(basis: Arc<FockBasis>, matrix: DMatrix<Complex64>, tail_mass: f64) -> Self {
        DensityMatrix { basis, matrix, tail_mass }
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn num_modes(&self) -> usize {
        self.basis.num_modes()
    }

    pub fn cutoff(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn element(&self, ket: &[usize], bra: &[usize]) -> Complex64 {
        match (self.basis.index_of(ket), self.basis.index_of(bra)) {
            (Some(r), Some(c)) => self.matrix[(r, c)],
            _ => ZERO,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    /// The state with every off-diagonal element (in the occupation basis) removed.
    pub fn diagonal_part(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = self.matrix[(i, i)];
        }
        DensityMatrix::from_parts(self.basis.clone(), m, self.tail_mass)
    }

    /// `Tr(ρ O)`.
    pub fn expectation(&self, op: &Operator) -> Result<Complex64> {
        if let Some(m) = op.max_mode() {
            if m >= self.num_modes() {
                return Err(FockError::InvalidMode { mode: m, num_modes: self.num_modes() });
            }
        }
        // Tr(ρO) = Σ_{s,t} ρ_{s t} O_{t s}
        let acc = op
            .entries(&self.basis)
            .into_iter()
            .map(|(t, s, v)| self.matrix[(s, t)] * v)
            .sum::<Complex64>();
        Ok(acc)
    }

    pub fn expectation_matrix(&self, observable: &DMatrix<Complex64>) -> Result<Complex64> {
        let dim = self.dim();
        if observable.nrows() != dim || observable.ncols() != dim {
            return Err(FockError::DimensionMismatch { expected: dim, actual: observable.nrows() });
        }
        Ok((&self.matrix * observable).trace())
    }

    /// `K ρ K†` without renormalization.
    pub fn sandwich(&self, op: &Operator) -> DMatrix<Complex64> {
        let k = op.matrix(&self.basis);
        &k * &self.matrix * k.adjoint()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().copied().collect()
    }

    pub fn check_invariants(&self, tol: &Tolerances) -> Result<()> {
        let herm = (&self.matrix - self.matrix.adjoint()).max_abs();
        if herm > tol.construction {
            return Err(FockError::Invariant(format!("not Hermitian: max |ρ - ρ†| = {herm:e}")));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol.derived || tr.im.abs() > tol.derived {
            return Err(FockError::Invariant(format!("trace {tr} differs from 1")));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -tol.derived {
            return Err(FockError::Invariant(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Max elementwise distance to another state on the same space.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if !self.basis.same_shape(&other.basis) {
            return Err(FockError::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        Ok((&self.matrix - &other.matrix).max_abs())
    }
}

/// Either kind of state, for operations that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(FockVector),
    Mixed(DensityMatrix),
}

impl State {
    pub fn basis(&self) -> &Arc<FockBasis> {
        match self {
            State::Pure(v) => v.basis(),
            State::Mixed(d) => d.basis(),
        }
    }

    pub fn tail_mass(&self) -> f64 {
        match self {
            State::Pure(v) => v.tail_mass(),
            State::Mixed(d) => d.tail_mass(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            State::Pure(v) => v.to_density(),
            State::Mixed(d) => d.clone(),
        }
    }
}

impl From<FockVector> for State {
    fn from(v: FockVector) -> Self {
        State::Pure(v)
    }
}

impl From<DensityMatrix> for State {
    fn from(d: DensityMatrix) -> Self {
        State::Mixed(d)
    }
}

/// `⟨ψ|O|ψ⟩` or `Tr(ρO)` for an observable given as a matrix.
pub fn expectation(state: &State, observable: &DMatrix<Complex64>) -> Result<Complex64> {
    match state {
        State::Pure(v) => v.expectation_matrix(observable),
        State::Mixed(d) => d.expectation_matrix(observable),
    }
}

/// Number state `|n_1, …, n_m⟩`.
pub fn fock_state(occupations: &[usize], cutoff: usize) -> Result<FockVector> {
    let basis = Arc::new(FockBasis::new(occupations.len(), cutoff)?);
    let idx = basis
        .index_of(occupations)
        .ok_or_else(|| FockError::CutoffExceeded { occupations: occupations.to_vec(), cutoff })?;
    let mut amps = vec![ZERO; basis.dim()];
    amps[idx] = ONE;
    Ok(FockVector { basis, amplitudes: amps, tail_mass: 0.0 })
}

/// Single-mode coherent state `|α⟩`.
pub fn coherent_state(alpha: Complex64, cutoff: usize) -> Result<FockVector> {
    coherent_product(&[alpha], cutoff)
}

/// Product of coherent states `|α_1⟩ ⊗ … ⊗ |α_m⟩` on the joint space with
/// total-photon cutoff `cutoff`. The total number of such a product is
/// Poisson with mean `Σ|α_i|²`, which sets the reported tail mass.
pub fn coherent_product(alphas: &[Complex64], cutoff: usize) -> Result<FockVector> {
    coherent_product_with_limit(alphas, cutoff, Tolerances::default().tail)
}

pub fn coherent_product_with_limit(alphas: &[Complex64], cutoff: usize, limit: f64) -> Result<FockVector> {
    let nbar: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
    let tail = poisson::tail(nbar, cutoff);
    if tail > limit {
        return Err(FockError::Truncation { tail, limit, cutoff });
    }
    let basis = Arc::new(FockBasis::new(alphas.len(), cutoff)?);
    let lf = poisson::ln_factorials(cutoff);
    let amps = basis
        .iter()
        .map(|occ| {
            let mut ln_mag = -nbar / 2.0;
            let mut phase = 0.0;
            for (&n, a) in occ.iter().zip(alphas) {
                if n == 0 {
                    continue;
                }
                if a.norm() == 0.0 {
                    return ZERO;
                }
                ln_mag += n as f64 * a.norm().ln() - 0.5 * lf[n];
                phase += n as f64 * a.arg();
            }
            Complex64::from_polar(ln_mag.exp(), phase)
        })
        .collect();
    FockVector::with_tail(basis, amps, tail)
}

/// Incoherent Poisson mixture `Σ_n p_n |n⟩⟨n|` on one mode.
pub fn poisson_mixture(nbar: f64, cutoff: usize) -> Result<DensityMatrix> {
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(FockError::InvalidParameter(format!("mean photon number {nbar} must be finite and >= 0")));
    }
    let limit = Tolerances::default().tail;
    let tail = poisson::tail(nbar, cutoff);
    if tail > limit {
        return Err(FockError::Truncation { tail, limit, cutoff });
    }
    let basis = Arc::new(FockBasis::new(1, cutoff)?);
    let p = poisson::pmf(nbar, cutoff);
    let m = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        p.len(),
        p.iter().map(|&x| Complex64::new(x, 0.0)),
    ));
    DensityMatrix::with_tail(basis, m, tail)
}

/// Product state. The joint cutoff is the sum of the factor cutoffs, so
/// nothing is discarded.
pub fn tensor(a: &State, b: &State) -> Result<State> {
    let cutoff = a.basis().cutoff() + b.basis().cutoff();
    tensor_truncated(a, b, cutoff).map(|(s, _)| s)
}

/// Product state re-truncated to `cutoff`; also returns the discarded mass.
pub fn tensor_truncated(a: &State, b: &State, cutoff: usize) -> Result<(State, f64)> {
    let (ba, bb) = (a.basis(), b.basis());
    let joint = Arc::new(FockBasis::new(ba.num_modes() + bb.num_modes(), cutoff)?);
    // (joint index, index in a, index in b) for every product tuple that fits
    let mut occ = Vec::with_capacity(joint.num_modes());
    let mut pairs = Vec::new();
    for i in 0..ba.dim() {
        for j in 0..bb.dim() {
            occ.clear();
            occ.extend_from_slice(ba.occupation(i));
            occ.extend_from_slice(bb.occupation(j));
            if let Some(k) = joint.index_of(&occ) {
                pairs.push((k, i, j));
            }
        }
    }
    let prior_tail = 1.0 - (1.0 - a.tail_mass()) * (1.0 - b.tail_mass());
    match (a, b) {
        (State::Pure(va), State::Pure(vb)) => {
            let mut amps = vec![ZERO; joint.dim()];
            for &(k, i, j) in &pairs {
                amps[k] = va.amplitudes[i] * vb.amplitudes[j];
            }
            let kept: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
            let discarded = (1.0 - kept).max(0.0);
            let tail = 1.0 - (1.0 - prior_tail) * (1.0 - discarded);
            Ok((State::Pure(FockVector::with_tail(joint, amps, tail)?), discarded))
        }
        (State::Mixed(da), State::Mixed(db)) => {
            let dim = joint.dim();
            let mut m = DMatrix::zeros(dim, dim);
            for &(k, i, j) in &pairs {
                for &(k2, i2, j2) in &pairs {
                    m[(k, k2)] = da.matrix[(i, i2)] * db.matrix[(j, j2)];
                }
            }
            let discarded = (1.0 - m.trace().re).max(0.0);
            let tail = 1.0 - (1.0 - prior_tail) * (1.0 - discarded);
            Ok((State::Mixed(DensityMatrix::with_tail(joint, m, tail)?), discarded))
        }
        _ => Err(FockError::MixedKinds),
    }
}

/// Reduced state on the modes in `keep` (in ascending mode order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(FockError::InvalidParameter("partial trace must keep at least one mode".into()));
    }
    let m = rho.num_modes();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&k| k >= m) {
        return Err(FockError::InvalidMode { mode: bad, num_modes: m });
    }
    let traced: Vec<usize> = (0..m).filter(|i| !kept.contains(i)).collect();
    let reduced = Arc::new(FockBasis::new(kept.len(), rho.cutoff())?);

    // group full-basis states by the occupations of the traced modes
    let mut groups: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..rho.dim() {
        let occ = rho.basis.occupation(i);
        let env: Vec<usize> = traced.iter().map(|&t| occ[t]).collect();
        let sys: Vec<usize> = kept.iter().map(|&k| occ[k]).collect();
        let r = reduced.index_of(&sys).expect("reduced tuple fits the cutoff");
        groups.entry(env).or_default().push((i, r));
    }
    let dim = reduced.dim();
    let mut out = DMatrix::zeros(dim, dim);
    for members in groups.values() {
        for &(i, ri) in members {
            for &(j, rj) in members {
                out[(ri, rj)] += rho.matrix[(i, j)];
            }
        }
    }
    Ok(DensityMatrix::from_parts(reduced, out, rho.tail_mass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_and_two_mode_fock_states() {
        let v = fock_state(&[0], 4).unwrap();
        assert_eq!(v.amplitude(&[0]), ONE);
        assert_eq!(v.dim(), 5);
        let s = fock_state(&[2, 3], 10).unwrap();
        assert_eq!(s.amplitude(&[2, 3]), ONE);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fock_state_rejects_cutoff_violation() {
        assert!(matches!(fock_state(&[5, 6], 10), Err(FockError::CutoffExceeded { .. })));
    }

    #[test]
    fn coherent_zero_is_vacuum() {
        let v = coherent_state(ZERO, 5).unwrap();
        assert!((v.amplitude(&[0]) - ONE).norm() < 1e-15);
        assert_eq!(v.tail_mass(), 0.0);
    }

    #[test]
    fn coherent_number_distribution_is_poisson() {
        for &nbar in &[0.5f64, 1.0, 2.5, 4.0] {
            let alpha = Complex64::from_polar(nbar.sqrt(), 0.9);
            let v = coherent_state(alpha, 40).unwrap();
            let p = poisson::pmf(nbar, 40);
            for n in 0..=40 {
                assert!((v.amplitude(&[n]).norm_sqr() - p[n]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coherent_mean_number_at_unit_amplitude() {
        let v = coherent_state(c(1.0, 0.0), 20).unwrap();
        let n = v.expectation(&Operator::number(0)).unwrap();
        // direct sum Σ n e^{-1}/n! over the truncated range
        let lf = poisson::ln_factorials(20);
        let direct: f64 = (0..=20).map(|k| k as f64 * (-1.0 - lf[k]).exp()).sum();
        assert!((n.re - direct).abs() < 1e-12);
        assert!((n.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn coherent_state_reports_truncation() {
        let err = coherent_state(c(3.0, 0.0), 10).unwrap_err();
        assert!(matches!(err, FockError::Truncation { .. }));
    }

    #[test]
    fn poisson_mixture_entries() {
        let r = poisson_mixture(0.0, 3).unwrap();
        assert_eq!(r.element(&[0], &[0]), ONE);
        let r = poisson_mixture(1.0, 25).unwrap();
        assert!((r.element(&[0], &[0]).re - 0.36787944117144233).abs() < 1e-12);
        assert!(poisson_mixture(9.0, 5).is_err());
    }

    #[test]
    fn tensor_of_vacua_and_mixed_kinds() {
        let a: State = fock_state(&[0], 2).unwrap().into();
        let b: State = fock_state(&[0], 3).unwrap().into();
        let ab = tensor(&a, &b).unwrap();
        match &ab {
            State::Pure(v) => assert_eq!(v.amplitude(&[0, 0]), ONE),
            _ => panic!("expected a pure state"),
        }
        let mixed: State = poisson_mixture(0.5, 15).unwrap().into();
        assert_eq!(tensor(&a, &mixed), Err(FockError::MixedKinds));
    }

    #[test]
    fn tensor_of_coherent_states_is_joint_coherent_state() {
        let (al, be) = (c(0.6, 0.2), c(-0.4, 0.9));
        let a: State = coherent_state(al, 20).unwrap().into();
        let b: State = coherent_state(be, 20).unwrap().into();
        let (joint, discarded) = tensor_truncated(&a, &b, 20).unwrap();
        assert!(discarded < 1e-12);
        let direct = coherent_product(&[al, be], 20).unwrap();
        if let State::Pure(v) = joint {
            for (x, y) in v.amplitudes().iter().zip(direct.amplitudes()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn truncating_tensor_reports_discarded_mass() {
        let a: State = fock_state(&[2], 2).unwrap().into();
        let b = coherent_state(c(1.0, 0.0), 20).unwrap();
        let (_, discarded) = tensor_truncated(&a, &b.clone().into(), 3).unwrap();
        // only |2,0⟩ and |2,1⟩ survive
        let kept = b.amplitude(&[0]).norm_sqr() + b.amplitude(&[1]).norm_sqr();
        assert!((discarded - (1.0 - kept)).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_recovers_factor() {
        let a = coherent_state(c(0.5, -0.3), 16).unwrap().to_density();
        let b = poisson_mixture(0.7, 20).unwrap();
        let ab = tensor(&a.clone().into(), &b.into()).unwrap().to_density();
        let ra = partial_trace(&ab, &[0]).unwrap();
        // reduced basis has the joint cutoff; compare on the original block
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert!((ra.element(&[i], &[j]) - a.element(&[i], &[j])).norm() < 1e-12);
            }
        }
        assert!((ra.trace().re - 1.0).abs() < 1e-12);
        assert!(partial_trace(&ab, &[]).is_err());
        assert!(partial_trace(&ab, &[2]).is_err());
    }

    #[test]
    fn expectation_of_lowering_operator() {
        let alpha = c(0.8, -0.5);
        let v = coherent_state(alpha, 30).unwrap();
        let a = Operator::annihilate(0);
        let via_op = v.expectation(&a).unwrap();
        let via_matrix = v.expectation_matrix(&a.matrix(v.basis())).unwrap();
        assert!((via_op - alpha).norm() < 1e-10);
        assert!((via_matrix - via_op).norm() < 1e-14);

        let n = fock_state(&[3], 6).unwrap();
        assert_eq!(n.expectation(&a).unwrap(), ZERO);

        let p = poisson_mixture(2.0, 30).unwrap();
        assert!(p.expectation(&a).unwrap().norm() < 1e-15);
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let v: State = fock_state(&[1], 3).unwrap().into();
        let wrong = DMatrix::<Complex64>::identity(3, 3);
        assert!(expectation(&v, &wrong).is_err());
        let fv = fock_state(&[1], 3).unwrap();
        assert!(fv.expectation(&Operator::annihilate(2)).is_err());
    }

    #[test]
    fn constructors_pass_their_invariants() {
        let tol = Tolerances::default();
        coherent_state(c(1.0, 1.0), 40).unwrap().check_invariants(&tol).unwrap();
        poisson_mixture(3.0, 40).unwrap().check_invariants(&tol).unwrap();
        coherent_state(c(0.3, 0.0), 20).unwrap().to_density().check_invariants(&tol).unwrap();
    }
}
