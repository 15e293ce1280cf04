//! Scalar backends.
//!
//! Everything above this module is generic over [`Scalar`]. Two families of
//! backends implement it:
//!
//! * exact fields: [`BigRational`] and number-field elements ([`FieldElement`]),
//!   where zero tests are exact and ranks come from fraction-free elimination;
//! * complex floating point: [`Complex<R>`] for any [`Real`] (`f64` or the
//!   arbitrary-precision [`BigFloat`]), where ranks come from singular values.

mod bigfloat;
mod field;
mod rational;
pub(crate) mod real;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{LinalgError, Matrix, Solution, Tolerance};

pub use bigfloat::{BigComplex, BigFloat, DEFAULT_PRECISION};
pub use field::{field_from_root, make_lambda_field, Embedding, FieldElement, FieldError, FieldSpec};
pub use real::Real;

/// Which family of arithmetic a scalar type belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Numeric => f.write_str("numeric"),
        }
    }
}

/// A field the whole crate can compute over.
///
/// Context-free constants (`zero`, `one`, [`Scalar::from_rational`]) must be
/// usable without knowing the number field or working precision; they adopt
/// the context of whatever operand they are combined with.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const BACKEND: Backend;

    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }

    /// Multiplicative inverse, `None` for (exact or literal) zero.
    fn inv(&self) -> Option<Self>;

    /// Complex approximation, used for reporting and for choosing roots.
    fn to_c64(&self) -> Complex64;

    /// Zero test for a value produced from terms of total magnitude `scale`.
    ///
    /// Exact backends ignore `scale`.
    fn is_zero_at(&self, scale: f64) -> bool;

    /// Preference for elimination pivots; larger is better.
    fn pivot_weight(&self) -> f64;

    /// Complex conjugate where it makes sense; exact backends return `None`.
    fn conj(&self) -> Option<Self> {
        None
    }

    fn rank(m: &Matrix<Self>, tol: &Tolerance) -> Result<usize, LinalgError>;

    /// Basis of the right kernel, one vector per entry.
    fn nullspace(m: &Matrix<Self>, tol: &Tolerance) -> Result<Vec<Vec<Self>>, LinalgError>;

    /// Solve `m · x = b`, reporting inconsistency instead of failing.
    fn solve(m: &Matrix<Self>, b: &[Self], tol: &Tolerance) -> Result<Solution<Self>, LinalgError>;

    /// Indices of a maximal set of independent columns, chosen greedily from the left.
    fn pivot_columns(m: &Matrix<Self>, tol: &Tolerance) -> Result<Vec<usize>, LinalgError>;

    fn pow_i64(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Some(acc)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        Some(self.clone() * &other.inv()?)
    }
}
