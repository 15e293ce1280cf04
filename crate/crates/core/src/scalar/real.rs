use std::fmt;
use std::ops::Neg;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use super::{Backend, Scalar};
use crate::linalg::{numeric, LinalgError, Matrix, Solution, Tolerance};

/// Ordered real field with square roots, the coordinate type of numeric complex scalars.
pub trait Real:
    Clone + fmt::Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    /// Mantissa bits carried, `None` for exactly known constants.
    fn precision(&self) -> Option<u32>;
    /// Round to a float with `bits` of mantissa (no-op for fixed-precision types).
    fn at_precision(&self, bits: u32) -> Self;
    /// `2^e`, exactly.
    fn pow2(e: i32) -> Self;
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn precision(&self) -> Option<u32> {
        Some(53)
    }
    fn at_precision(&self, _bits: u32) -> Self {
        *self
    }
    fn pow2(e: i32) -> Self {
        2f64.powi(e)
    }
}

pub(crate) fn norm_sqr<R: Real>(z: &Complex<R>) -> R {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub(crate) fn cabs<R: Real>(z: &Complex<R>) -> R {
    norm_sqr(z).sqrt()
}

/// Working precision of a numeric value, defaulting when nothing pins it down.
pub(crate) fn complex_precision<R: Real>(z: &Complex<R>) -> Option<u32> {
    match (z.re.precision(), z.im.precision()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

impl<R: Real> Scalar for Complex<R> {
    const BACKEND: Backend = Backend::Numeric;

    fn from_rational(q: &BigRational) -> Self {
        Complex::new(R::from_rational(q), R::zero())
    }

    fn inv(&self) -> Option<Self> {
        let n = norm_sqr(self);
        if n.is_zero() {
            return None;
        }
        Some(Complex::new(
            self.re.clone() / n.clone(),
            -(self.im.clone() / n),
        ))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn is_zero_at(&self, scale: f64) -> bool {
        let bits = complex_precision(self).unwrap_or(super::DEFAULT_PRECISION);
        let tol = scale.max(f64::MIN_POSITIVE) * 2f64.powi(-((bits / 2) as i32));
        cabs(self).to_f64() <= tol
    }

    fn pivot_weight(&self) -> f64 {
        cabs(self).to_f64()
    }

    fn conj(&self) -> Option<Self> {
        Some(Complex::new(self.re.clone(), -self.im.clone()))
    }

    fn rank(m: &Matrix<Self>, tol: &Tolerance) -> Result<usize, LinalgError> {
        numeric::rank(m, tol)
    }

    fn nullspace(m: &Matrix<Self>, tol: &Tolerance) -> Result<Vec<Vec<Self>>, LinalgError> {
        numeric::nullspace(m, tol)
    }

    fn solve(m: &Matrix<Self>, b: &[Self], tol: &Tolerance) -> Result<Solution<Self>, LinalgError> {
        numeric::solve(m, b, tol)
    }

    fn pivot_columns(m: &Matrix<Self>, tol: &Tolerance) -> Result<Vec<usize>, LinalgError> {
        numeric::pivot_columns(m, tol)
    }
}
