//! Passive linear optics on the truncated Fock space.
//!
//! # Sign convention
//!
//! A beam splitter on modes `(i, j)` with transmission `T = t²`, `r² = 1 − T`
//! acts on creation operators as
//!
//! ```text
//! a_i† → t a_i† + r a_j†        a_j† → −r a_i† + t a_j†
//! ```
//!
//! which is the Heisenberg map `a_i → t a_i − r a_j`, `a_j → r a_i + t a_j`.
//! At `T = 1/2` the output ports are `c = (a − b)/√2` on mode `i` and
//! `d = (a + b)/√2` on mode `j`. It is generated by
//! `exp(θ (a_j† a_i − a_i† a_j))` with `cos θ = t`. A source `|n⟩` entering
//! mode `i` against vacuum in mode `j` leaves as
//! `Σ_m √(C(n,m) T^m (1−T)^{n−m}) |m, n−m⟩` with all amplitudes positive.
//!
//! A phase shifter with angle `φ` on mode `i` is `exp(iφ N_i)`.

use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::fock::{poisson::ln_factorials, DensityMatrix, FockBasis, FockVector, Ladder, Operator, State};
use crate::linalg;

/// Networks above this dimension are never materialized as dense matrices.
pub const DEFAULT_MAX_DENSE_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    modes: (usize, usize),
    transmission: f64,
}

impl BeamSplitter {
    pub fn new(i: usize, j: usize, transmission: f64) -> Result<Self> {
        if i == j {
            return Err(FockError::InvalidParameter(format!("beam splitter needs two distinct modes, got ({i}, {j})")));
        }
        if !(0.0..=1.0).contains(&transmission) {
            return Err(FockError::InvalidParameter(format!("transmission {transmission} outside [0, 1]")));
        }
        Ok(BeamSplitter { modes: (i, j), transmission })
    }

    pub fn balanced(i: usize, j: usize) -> Result<Self> {
        Self::new(i, j, 0.5)
    }

    pub fn modes(&self) -> (usize, usize) {
        self.modes
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    /// Mixing angle `θ` with `cos θ = √T`.
    pub fn angle(&self) -> f64 {
        self.transmission.sqrt().acos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShifter {
    mode: usize,
    phase: f64,
}

impl PhaseShifter {
    /// The angle is reduced to `[0, 2π)`.
    pub fn new(mode: usize, phase: f64) -> Result<Self> {
        if !phase.is_finite() {
            return Err(FockError::InvalidParameter(format!("phase {phase} is not finite")));
        }
        let mut phase = phase.rem_euclid(TAU);
        if phase >= TAU {
            phase = 0.0;
        }
        Ok(PhaseShifter { mode, phase })
    }

    pub fn mode(&self) -> usize {
        self.mode
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    BeamSplitter(BeamSplitter),
    PhaseShifter(PhaseShifter),
}

impl Element {
    pub fn max_mode(&self) -> usize {
        match self {
            Element::BeamSplitter(b) => b.modes.0.max(b.modes.1),
            Element::PhaseShifter(p) => p.mode,
        }
    }

    fn check(&self, num_modes: usize) -> Result<()> {
        let m = self.max_mode();
        if m >= num_modes {
            return Err(FockError::InvalidMode { mode: m, num_modes });
        }
        Ok(())
    }

    /// Anti-Hermitian generator `G` with element unitary `exp(G)`.
    pub fn generator(&self) -> Operator {
        match *self {
            Element::BeamSplitter(b) => {
                let (i, j) = b.modes;
                let th = Complex64::new(b.angle(), 0.0);
                Operator::product(th, &[Ladder::Create(j), Ladder::Annihilate(i)])
                    - Operator::product(th, &[Ladder::Create(i), Ladder::Annihilate(j)])
            }
            Element::PhaseShifter(p) => Operator::number(p.mode).scale(Complex64::new(0.0, p.phase)),
        }
    }
}

impl From<BeamSplitter> for Element {
    fn from(b: BeamSplitter) -> Self {
        Element::BeamSplitter(b)
    }
}

impl From<PhaseShifter> for Element {
    fn from(p: PhaseShifter) -> Self {
        Element::PhaseShifter(p)
    }
}

/// `⟨m, S−m| U |p, S−p⟩` for every `m, p ≤ S`, by binomial expansion of the
/// transformed creation operators.
pub fn splitter_block(transmission: f64, total: usize) -> Vec<Vec<f64>> {
    let t = transmission.sqrt();
    let r = (1.0 - transmission).max(0.0).sqrt();
    let lf = ln_factorials(total);
    let binom = |n: usize, k: usize| (lf[n] - lf[k] - lf[n - k]).exp();
    let powi = |x: f64, e: usize| if e == 0 { 1.0 } else { x.powi(e as i32) };
    let mut block = vec![vec![0.0; total + 1]; total + 1];
    for p in 0..=total {
        let q = total - p;
        for k in 0..=p {
            for l in 0..=q {
                let m = k + l;
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let coeff = binom(p, k) * binom(q, l) * powi(t, k + q - l) * powi(r, p - k + l) * sign;
                let norm = (0.5 * (lf[m] + lf[total - m] - lf[p] - lf[q])).exp();
                block[m][p] += coeff * norm;
            }
        }
    }
    block
}

fn apply_amplitudes(basis: &FockBasis, element: &Element, psi: &[Complex64]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    match *element {
        Element::PhaseShifter(p) => psi
            .iter()
            .enumerate()
            .map(|(s, &a)| a * Complex64::from_polar(1.0, p.phase * basis.occupation(s)[p.mode] as f64))
            .collect(),
        Element::BeamSplitter(b) => {
            let (i, j) = b.modes;
            let mut blocks: Vec<Option<Vec<Vec<f64>>>> = vec![None; basis.cutoff() + 1];
            let mut out = vec![zero; psi.len()];
            let mut occ = Vec::with_capacity(basis.num_modes());
            for (s, &amp) in psi.iter().enumerate() {
                if amp == zero {
                    continue;
                }
                occ.clear();
                occ.extend_from_slice(basis.occupation(s));
                let (p, q) = (occ[i], occ[j]);
                let total = p + q;
                let block = blocks[total].get_or_insert_with(|| splitter_block(b.transmission, total));
                for (m, row) in block.iter().enumerate() {
                    let w = row[p];
                    if w == 0.0 {
                        continue;
                    }
                    occ[i] = m;
                    occ[j] = total - m;
                    let target = basis.index_of(&occ).expect("splitter conserves the photon number");
                    out[target] += amp * w;
                }
            }
            out
        }
    }
}

pub fn apply_to_vector(state: &FockVector, element: &Element) -> Result<FockVector> {
    element.check(state.num_modes())?;
    let amps = apply_amplitudes(state.basis(), element, state.amplitudes());
    FockVector::with_tail(state.basis().clone(), amps, state.tail_mass())
}

/// `U ρ U†`, applying `U` to the columns and then to the rows.
pub fn apply_to_density(rho: &DensityMatrix, element: &Element) -> Result<DensityMatrix> {
    element.check(rho.num_modes())?;
    let basis = rho.basis();
    let left = apply_columns(basis, element, rho.matrix());
    let both = apply_columns(basis, element, &left.adjoint()).adjoint();
    Ok(DensityMatrix::from_parts(basis.clone(), both, rho.tail_mass()))
}

fn apply_columns(basis: &FockBasis, element: &Element, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let dim = m.nrows();
    let mut out = DMatrix::zeros(dim, dim);
    for c in 0..dim {
        let col: Vec<Complex64> = m.column(c).iter().copied().collect();
        let image = apply_amplitudes(basis, element, &col);
        out.column_mut(c).copy_from_slice(&image);
    }
    out
}

pub fn apply_element(state: &State, element: &Element) -> Result<State> {
    match state {
        State::Pure(v) => apply_to_vector(v, element).map(State::Pure),
        State::Mixed(d) => apply_to_density(d, element).map(State::Mixed),
    }
}

/// Dense unitary of one element from the combinatorial construction.
pub fn element_matrix(element: &Element, basis: &FockBasis) -> Result<DMatrix<Complex64>> {
    element.check(basis.num_modes())?;
    let dim = basis.dim();
    let mut u = DMatrix::zeros(dim, dim);
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    for s in 0..dim {
        e[s] = Complex64::new(1.0, 0.0);
        let col = apply_amplitudes(basis, element, &e);
        u.column_mut(s).copy_from_slice(&col);
        e[s] = Complex64::new(0.0, 0.0);
    }
    Ok(u)
}

/// Independent construction of the element unitary: the dense matrix
/// exponential of its quadratic generator. Used to cross-check
/// [`element_matrix`] and [`split_fock`].
pub fn matrix_exponential_oracle(element: &Element, basis: &FockBasis) -> Result<DMatrix<Complex64>> {
    element.check(basis.num_modes())?;
    Ok(linalg::expm(&element.generator().matrix(basis)))
}

/// Source `|n⟩` split at transmission `T` and phase shifted on the first mode:
/// `Σ_m c_m e^{−iφm} |m, n−m⟩` with `c_m = √(C(n,m) T^m (1−T)^{n−m})`.
pub fn split_fock(n: usize, transmission: f64, phi: f64, cutoff: usize) -> Result<FockVector> {
    if n > cutoff {
        return Err(FockError::CutoffExceeded { occupations: vec![n, 0], cutoff });
    }
    if !(0.0..=1.0).contains(&transmission) {
        return Err(FockError::InvalidParameter(format!("transmission {transmission} outside [0, 1]")));
    }
    let basis = Arc::new(FockBasis::new(2, cutoff)?);
    let lf = ln_factorials(n);
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.dim()];
    for m in 0..=n {
        let c2 = (lf[n] - lf[m] - lf[n - m]).exp()
            * if m == 0 { 1.0 } else { transmission.powi(m as i32) }
            * if n == m { 1.0 } else { (1.0 - transmission).powi((n - m) as i32) };
        let idx = basis.index_of(&[m, n - m]).expect("n <= cutoff");
        amps[idx] = Complex64::from_polar(c2.sqrt(), -phi * m as f64);
    }
    FockVector::from_amplitudes(basis, amps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearNetwork {
    num_modes: usize,
    elements: Vec<Element>,
    max_dense_dim: usize,
}

impl LinearNetwork {
    pub fn new(num_modes: usize, elements: Vec<Element>) -> Result<Self> {
        if num_modes == 0 {
            return Err(FockError::InvalidParameter("network needs at least one mode".into()));
        }
        for e in &elements {
            e.check(num_modes)?;
        }
        Ok(LinearNetwork { num_modes, elements, max_dense_dim: DEFAULT_MAX_DENSE_DIM })
    }

    pub fn identity(num_modes: usize) -> Result<Self> {
        Self::new(num_modes, Vec::new())
    }

    pub fn with_max_dense_dim(mut self, dim: usize) -> Self {
        self.max_dense_dim = dim;
        self
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn push(&mut self, element: Element) -> Result<()> {
        element.check(self.num_modes)?;
        self.elements.push(element);
        Ok(())
    }

    /// Element-by-element application; the composite is never built.
    pub fn apply(&self, state: &State) -> Result<State> {
        if state.basis().num_modes() != self.num_modes {
            return Err(FockError::DimensionMismatch { expected: self.num_modes, actual: state.basis().num_modes() });
        }
        let mut s = state.clone();
        for e in &self.elements {
            s = apply_element(&s, e)?;
        }
        Ok(s)
    }

    pub(crate) fn apply_amplitudes(&self, basis: &FockBasis, psi: &[Complex64]) -> Vec<Complex64> {
        self.elements.iter().fold(psi.to_vec(), |acc, e| apply_amplitudes(basis, e, &acc))
    }

    /// Composite unitary; refused above the configured dense-dimension limit.
    pub fn unitary(&self, basis: &FockBasis) -> Result<DMatrix<Complex64>> {
        if basis.num_modes() != self.num_modes {
            return Err(FockError::DimensionMismatch { expected: self.num_modes, actual: basis.num_modes() });
        }
        if basis.dim() > self.max_dense_dim {
            return Err(FockError::InvalidParameter(format!(
                "dimension {} exceeds the dense limit {}",
                basis.dim(),
                self.max_dense_dim
            )));
        }
        let dim = basis.dim();
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        for e in &self.elements {
            u = apply_columns(basis, e, &u);
        }
        Ok(u)
    }

    pub fn to_description(&self) -> NetworkDescription {
        NetworkDescription {
            num_modes: self.num_modes,
            elements: self
                .elements
                .iter()
                .map(|e| match *e {
                    Element::BeamSplitter(b) => ElementDescription::Bs { modes: [b.modes.0, b.modes.1], t: b.transmission },
                    Element::PhaseShifter(p) => ElementDescription::Ps { modes: [p.mode], phi: p.phase },
                })
                .collect(),
        }
    }
}

/// JSON network description: `{"num_modes": m, "elements": [...]}` with
/// elements `{"type":"bs","modes":[i,j],"T":…}` or `{"type":"ps","modes":[i],"phi":…}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDescription {
    pub num_modes: usize,
    pub elements: Vec<ElementDescription>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ElementDescription {
    Bs {
        modes: [usize; 2],
        #[serde(rename = "T")]
        t: f64,
    },
    Ps {
        modes: [usize; 1],
        phi: f64,
    },
}

impl NetworkDescription {
    pub fn build(&self) -> Result<LinearNetwork> {
        let elements = self
            .elements
            .iter()
            .map(|e| match *e {
                ElementDescription::Bs { modes, t } => BeamSplitter::new(modes[0], modes[1], t).map(Element::from),
                ElementDescription::Ps { modes, phi } => PhaseShifter::new(modes[0], phi).map(Element::from),
            })
            .collect::<Result<Vec<_>>>()?;
        LinearNetwork::new(self.num_modes, elements)
    }

    pub fn parse(text: &str) -> Result<LinearNetwork> {
        serde_json::from_str::<NetworkDescription>(text)?.build()
    }

    /// Validated, normalized form of a description (phases reduced to `[0, 2π)`).
    pub fn canonical(text: &str) -> Result<String> {
        Ok(serde_json::to_string_pretty(&Self::parse(text)?.to_description())?)
    }
}
