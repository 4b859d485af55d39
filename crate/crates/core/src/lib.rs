//! Truncated Fock-space simulation of optical interference experiments,
//! described two ways: with coherent states relative to an external phase
//! reference, and with number-diagonal states where the reference is a
//! quantum mode. The modules check that both descriptions predict the same
//! statistics for every measurement of relative degrees of freedom.

pub mod error;
pub mod fock;
pub mod homodyne;
pub mod linalg;
pub mod optics;
pub mod theorem;
pub mod trajectories;
pub mod twirl;

pub use error::{FockError, Result};
pub use fock::{DensityMatrix, FockBasis, FockVector, Operator, State, Tolerances};
