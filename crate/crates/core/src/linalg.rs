//! Small dense helpers that nalgebra does not provide in the form needed here.

use nalgebra::{DMatrix, Dim, Matrix, RawStorage};
use num_complex::Complex64;

/// Largest entry modulus of a complex matrix.
pub trait MaxAbs {
    fn max_abs(&self) -> f64;
}

impl<R: Dim, C: Dim, S: RawStorage<Complex64, R, C>> MaxAbs for Matrix<Complex64, R, C, S> {
    fn max_abs(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Matrix exponential by scaling and squaring of a Taylor series.
///
/// The series is summed to double precision on `A / 2^s` with
/// `‖A / 2^s‖₁ ≤ 1/2`, then squared `s` times.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm1 = (0..n).map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm1 * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = a * Complex64::new(scale, 0.0);
    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        result += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `max |U†U − I|` elementwise.
pub fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n)).max_abs()
}

/// `max |AB − BA|` elementwise.
pub fn commutator_norm(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a * b - b * a).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.0, 1.3),
            Complex64::new(2.0, 0.0),
            Complex64::new(-7.5, 0.2),
        ]));
        let e = expm(&a);
        for i in 0..3 {
            assert!((e[(i, i)] - a[(i, i)].exp()).norm() < 1e-12 * a[(i, i)].exp().norm().max(1.0));
        }
    }

    #[test]
    fn exp_of_rotation_generator() {
        let th = 0.83f64;
        let z = Complex64::new(0.0, 0.0);
        let g = DMatrix::from_row_slice(2, 2, &[z, Complex64::new(-th, 0.0), Complex64::new(th, 0.0), z]);
        let e = expm(&g);
        assert!((e[(0, 0)].re - th.cos()).abs() < 1e-14);
        assert!((e[(1, 0)].re - th.sin()).abs() < 1e-14);
        assert!(unitarity_defect(&e) < 1e-14);
    }
}
