use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Backend, Scalar};
use crate::linalg::{exact, LinalgError, Matrix, Solution, Tolerance};

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_zero_at(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn pivot_weight(&self) -> f64 {
        -((self.numer().bits() + self.denom().bits()) as f64)
    }

    fn rank(m: &Matrix<Self>, _tol: &Tolerance) -> Result<usize, LinalgError> {
        Ok(exact::rank(m))
    }

    fn nullspace(m: &Matrix<Self>, _tol: &Tolerance) -> Result<Vec<Vec<Self>>, LinalgError> {
        Ok(exact::nullspace(m))
    }

    fn solve(m: &Matrix<Self>, b: &[Self], _tol: &Tolerance) -> Result<Solution<Self>, LinalgError> {
        exact::solve(m, b)
    }

    fn pivot_columns(m: &Matrix<Self>, _tol: &Tolerance) -> Result<Vec<usize>, LinalgError> {
        Ok(exact::pivot_columns(m))
    }
}
