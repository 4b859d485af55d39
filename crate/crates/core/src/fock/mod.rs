//! Truncated multimode Fock space: basis, ladder operators, states, and
//! the reductions between them.

mod basis;
pub mod json;
mod ops;
pub mod poisson;
pub mod random;
mod state;

pub use basis::FockBasis;
pub use ops::{Ladder, ModeOperator, ModeOperatorKind, Operator};
pub use state::{
    coherent_product, coherent_product_with_limit, coherent_state, expectation, fock_state, partial_trace,
    poisson_mixture, tensor, tensor_truncated, DensityMatrix, FockVector, State,
};

/// Numerical tolerances shared by the invariant checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Normalization and Hermiticity of freshly constructed states.
    pub construction: f64,
    /// Traces, positivity and other derived quantities.
    pub derived: f64,
    /// Largest truncation tail a constructor will accept.
    pub tail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { construction: 1e-12, derived: 1e-10, tail: 1e-12 }
    }
}
