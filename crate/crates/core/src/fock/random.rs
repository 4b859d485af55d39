//! Seeded random states for property tests and the theorem checker.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, FockBasis, FockVector};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed pure state.
pub fn pure_state<R: Rng + ?Sized>(basis: Arc<FockBasis>, rng: &mut R) -> FockVector {
    let amps = (0..basis.dim()).map(|_| gaussian(rng)).collect();
    FockVector::from_amplitudes(basis, amps).expect("gaussian vector is nonzero")
}

/// Random density matrix `G G† / Tr(G G†)` with `G` a `dim × rank` Ginibre matrix.
pub fn density_matrix<R: Rng + ?Sized>(basis: Arc<FockBasis>, rank: usize, rng: &mut R) -> DensityMatrix {
    let dim = basis.dim();
    let g = DMatrix::from_fn(dim, rank.max(1), |_, _| gaussian(rng));
    DensityMatrix::from_matrix(basis, &g * g.adjoint()).expect("ginibre product has positive trace")
}
