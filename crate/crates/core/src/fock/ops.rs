//! Polynomial operators in the mode ladder operators.
//!
//! An [`Operator`] is a sum of terms `coeff · L_1 L_2 … L_k`, where each `L`
//! is a creation or annihilation operator on one mode. Terms act directly
//! on occupation tuples, so operators never need to be materialized as
//! matrices unless a caller asks for one. Creation past the cutoff drops
//! the component; that is the only place truncation enters.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::FockBasis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
}

impl Ladder {
    fn mode(self) -> usize {
        match self {
            Ladder::Create(m) | Ladder::Annihilate(m) => m,
        }
    }

    fn adjoint(self) -> Ladder {
        match self {
            Ladder::Create(m) => Ladder::Annihilate(m),
            Ladder::Annihilate(m) => Ladder::Create(m),
        }
    }
}

/// Single-mode operator kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeOperatorKind {
    Annihilation,
    Creation,
    Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeOperator {
    pub mode: usize,
    pub kind: ModeOperatorKind,
}

impl ModeOperator {
    pub fn annihilation(mode: usize) -> Self {
        ModeOperator { mode, kind: ModeOperatorKind::Annihilation }
    }

    pub fn creation(mode: usize) -> Self {
        ModeOperator { mode, kind: ModeOperatorKind::Creation }
    }

    pub fn number(mode: usize) -> Self {
        ModeOperator { mode, kind: ModeOperatorKind::Number }
    }

    pub fn to_operator(self) -> Operator {
        match self.kind {
            ModeOperatorKind::Annihilation => Operator::annihilate(self.mode),
            ModeOperatorKind::Creation => Operator::create(self.mode),
            ModeOperatorKind::Number => Operator::number(self.mode),
        }
    }

    pub fn matrix(self, basis: &FockBasis) -> DMatrix<Complex64> {
        self.to_operator().matrix(basis)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Term {
    coeff: Complex64,
    // applied right to left, like the written product
    factors: Vec<Ladder>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Operator {
    terms: Vec<Term>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Operator::product(Complex64::new(1.0, 0.0), &[])
    }

    pub fn product(coeff: Complex64, factors: &[Ladder]) -> Self {
        Operator { terms: vec![Term { coeff, factors: factors.to_vec() }] }
    }

    pub fn annihilate(mode: usize) -> Self {
        Operator::product(Complex64::new(1.0, 0.0), &[Ladder::Annihilate(mode)])
    }

    pub fn create(mode: usize) -> Self {
        Operator::product(Complex64::new(1.0, 0.0), &[Ladder::Create(mode)])
    }

    /// `a†a`, which is exact on every truncated basis state.
    pub fn number(mode: usize) -> Self {
        Operator::product(
            Complex64::new(1.0, 0.0),
            &[Ladder::Create(mode), Ladder::Annihilate(mode)],
        )
    }

    pub fn total_number(num_modes: usize) -> Self {
        (0..num_modes).map(Operator::number).fold(Operator::zero(), |acc, n| acc + n)
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self
    }

    pub fn adjoint(&self) -> Self {
        Operator {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.conj(),
                    factors: t.factors.iter().rev().map(|l| l.adjoint()).collect(),
                })
                .collect(),
        }
    }

    /// Operator product `self · rhs`.
    pub fn compose(&self, rhs: &Operator) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for l in &self.terms {
            for r in &rhs.terms {
                let mut factors = l.factors.clone();
                factors.extend_from_slice(&r.factors);
                terms.push(Term { coeff: l.coeff * r.coeff, factors });
            }
        }
        Operator { terms }
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.terms.iter().flat_map(|t| t.factors.iter().map(|l| l.mode())).max()
    }

    /// Image of one basis state under one term: target index and amplitude.
    fn apply_term(term: &Term, basis: &FockBasis, source: usize, scratch: &mut Vec<usize>) -> Option<(usize, f64)> {
        scratch.clear();
        scratch.extend_from_slice(basis.occupation(source));
        let mut total: usize = scratch.iter().sum();
        let mut factor = 1.0f64;
        for l in term.factors.iter().rev() {
            match *l {
                Ladder::Annihilate(m) => {
                    let n = *scratch.get(m)?;
                    if n == 0 {
                        return None;
                    }
                    factor *= (n as f64).sqrt();
                    scratch[m] = n - 1;
                    total -= 1;
                }
                Ladder::Create(m) => {
                    let n = *scratch.get(m)?;
                    if total + 1 > basis.cutoff() {
                        return None;
                    }
                    factor *= ((n + 1) as f64).sqrt();
                    scratch[m] = n + 1;
                    total += 1;
                }
            }
        }
        basis.index_of(scratch).map(|i| (i, factor))
    }

    /// Dense application `O ψ`.
    pub fn apply(&self, basis: &FockBasis, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); basis.dim()];
        let mut scratch = Vec::with_capacity(basis.num_modes());
        for (s, &amp) in psi.iter().enumerate() {
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            for term in &self.terms {
                if let Some((t, f)) = Self::apply_term(term, basis, s, &mut scratch) {
                    out[t] += term.coeff * amp * f;
                }
            }
        }
        out
    }

    /// Application to a sparse vector given as sorted `(index, amplitude)` pairs.
    pub fn apply_sparse(&self, basis: &FockBasis, psi: &[(usize, Complex64)]) -> Vec<(usize, Complex64)> {
        let mut acc: BTreeMap<usize, Complex64> = BTreeMap::new();
        let mut scratch = Vec::with_capacity(basis.num_modes());
        for &(s, amp) in psi {
            for term in &self.terms {
                if let Some((t, f)) = Self::apply_term(term, basis, s, &mut scratch) {
                    *acc.entry(t).or_default() += term.coeff * amp * f;
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Nonzero matrix elements as `(row, column, value)`; duplicates add.
    pub fn entries(&self, basis: &FockBasis) -> Vec<(usize, usize, Complex64)> {
        let mut out = Vec::new();
        let mut scratch = Vec::with_capacity(basis.num_modes());
        for s in 0..basis.dim() {
            for term in &self.terms {
                if let Some((t, f)) = Self::apply_term(term, basis, s, &mut scratch) {
                    out.push((t, s, term.coeff * f));
                }
            }
        }
        out
    }

    pub fn matrix(&self, basis: &FockBasis) -> DMatrix<Complex64> {
        let dim = basis.dim();
        let mut m = DMatrix::zeros(dim, dim);
        let mut scratch = Vec::with_capacity(basis.num_modes());
        for s in 0..dim {
            for term in &self.terms {
                if let Some((t, f)) = Self::apply_term(term, basis, s, &mut scratch) {
                    m[(t, s)] += term.coeff * f;
                }
            }
        }
        m
    }
}

impl std::ops::Add for Operator {
    type Output = Operator;

    fn add(mut self, rhs: Operator) -> Operator {
        self.terms.extend(rhs.terms);
        self
    }
}

impl std::ops::Sub for Operator {
    type Output = Operator;

    fn sub(self, rhs: Operator) -> Operator {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}
