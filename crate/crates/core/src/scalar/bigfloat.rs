use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rug::{Float, Integer, Rational};

use super::real::Real;

/// Working precision used when nothing else fixes one.
pub const DEFAULT_PRECISION: u32 = 256;

/// Arbitrary-precision real number.
///
/// Values are either exact rationals (constants such as `0`, `1`, `1/2`) or
/// MPFR floats with an explicit mantissa size. Mixing the two rounds the
/// rational at the float's precision, and mixing two floats works at the
/// larger precision, so precision is never lost silently.
#[derive(Clone)]
pub struct BigFloat(Repr);

#[derive(Clone)]
enum Repr {
    Exact(Rational),
    Float(Float),
}

pub type BigComplex = Complex<BigFloat>;

fn int_to_rug(v: &BigInt) -> Integer {
    Integer::from_str_radix(&v.to_str_radix(16), 16).expect("hex digits round-trip")
}

fn int_from_rug(v: &Integer) -> BigInt {
    BigInt::parse_bytes(v.to_string_radix(16).as_bytes(), 16).expect("hex digits round-trip")
}

impl BigFloat {
    pub fn from_float(f: Float) -> Self {
        BigFloat(Repr::Float(f))
    }

    pub fn exact(q: &BigRational) -> Self {
        BigFloat(Repr::Exact(Rational::from((
            int_to_rug(q.numer()),
            int_to_rug(q.denom()),
        ))))
    }

    pub fn with_precision_f64(v: f64, bits: u32) -> Self {
        BigFloat(Repr::Float(Float::with_val(bits, v)))
    }

    /// Parse a decimal literal such as `-1.25e-3` at `bits` of precision.
    pub fn parse_decimal(s: &str, bits: u32) -> Option<Self> {
        let parsed = Float::parse(s.trim()).ok()?;
        Some(BigFloat(Repr::Float(Float::with_val(bits, parsed))))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.0, Repr::Exact(_))
    }

    /// Exact value, if this number is still a rational constant.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Exact(q) => Some(BigRational::new(
                int_from_rug(q.numer()),
                int_from_rug(q.denom()),
            )),
            Repr::Float(_) => None,
        }
    }

    fn as_float(&self, bits: u32) -> Float {
        match &self.0 {
            Repr::Exact(q) => Float::with_val(bits, q),
            Repr::Float(f) => {
                if f.prec() >= bits {
                    f.clone()
                } else {
                    Float::with_val(bits, f)
                }
            }
        }
    }

    fn is_exact_zero(&self) -> bool {
        matches!(&self.0, Repr::Exact(q) if q.cmp0() == Ordering::Equal)
    }

    fn is_exact_one(&self) -> bool {
        matches!(&self.0, Repr::Exact(q) if *q == 1)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        match &self.0 {
            Repr::Exact(q) => {
                if *q.denom() == 1 {
                    q.numer().to_string()
                } else {
                    let f = Float::with_val(DEFAULT_PRECISION, q);
                    f.to_string_radix(10, Some(digits))
                }
            }
            Repr::Float(f) => {
                if f.is_zero() {
                    "0".to_string()
                } else {
                    f.to_string_radix(10, Some(digits))
                }
            }
        }
    }

    fn combine(
        &self,
        other: &Self,
        exact: impl FnOnce(&Rational, &Rational) -> Option<Rational>,
        float: impl FnOnce(Float, &Float) -> Float,
    ) -> Self {
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => match exact(a, b) {
                Some(q) => BigFloat(Repr::Exact(q)),
                None => BigFloat(Repr::Float(Float::with_val(DEFAULT_PRECISION, f64::NAN))),
            },
            _ => {
                let bits = self
                    .precision()
                    .into_iter()
                    .chain(other.precision())
                    .max()
                    .unwrap_or(DEFAULT_PRECISION);
                let a = self.as_float(bits);
                let b = other.as_float(bits);
                BigFloat(Repr::Float(float(a, &b)))
            }
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(20)))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Repr::Exact(Rational::new()))
    }
    fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Exact(q) => q.cmp0() == Ordering::Equal,
            Repr::Float(f) => f.is_zero(),
        }
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Repr::Exact(Rational::from(1)))
    }
}

impl<'a> Add<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn add(self, other: &BigFloat) -> BigFloat {
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        self.combine(other, |a, b| Some(Rational::from(a + b)), |a, b| a + b)
    }
}

impl<'a> Sub<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn sub(self, other: &BigFloat) -> BigFloat {
        if other.is_exact_zero() {
            return self.clone();
        }
        if self.is_exact_zero() {
            return -other.clone();
        }
        self.combine(other, |a, b| Some(Rational::from(a - b)), |a, b| a - b)
    }
}

impl<'a> Mul<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn mul(self, other: &BigFloat) -> BigFloat {
        if self.is_exact_zero() || other.is_exact_zero() {
            return BigFloat::zero();
        }
        if self.is_exact_one() {
            return other.clone();
        }
        if other.is_exact_one() {
            return self.clone();
        }
        self.combine(other, |a, b| Some(Rational::from(a * b)), |a, b| a * b)
    }
}

impl<'a> Div<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn div(self, other: &BigFloat) -> BigFloat {
        if other.is_exact_one() {
            return self.clone();
        }
        self.combine(
            other,
            |a, b| {
                if b.cmp0() == Ordering::Equal {
                    None
                } else {
                    Some(Rational::from(a / b))
                }
            },
            |a, b| a / b,
        )
    }
}

impl<'a> Rem<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn rem(self, other: &BigFloat) -> BigFloat {
        self.combine(
            other,
            |a, b| {
                if b.cmp0() == Ordering::Equal {
                    return None;
                }
                let q = Rational::from(a / b).trunc();
                Some(Rational::from(a - Rational::from(q * b)))
            },
            |a, b| a % b,
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, other: BigFloat) -> BigFloat {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, other: &BigFloat) -> BigFloat {
                (&self).$m(other)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div, Rem rem);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        match self.0 {
            Repr::Exact(q) => BigFloat(Repr::Exact(-q)),
            Repr::Float(f) => BigFloat(Repr::Float(-f)),
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => a.partial_cmp(b),
            (Repr::Float(a), Repr::Float(b)) => a.partial_cmp(b),
            (Repr::Float(a), Repr::Exact(b)) => a.partial_cmp(b),
            (Repr::Exact(a), Repr::Float(b)) => b.partial_cmp(a).map(Ordering::reverse),
        }
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        BigFloat::parse_decimal(s, DEFAULT_PRECISION).ok_or_else(|| format!("invalid number {s:?}"))
    }
}

impl Real for BigFloat {
    fn from_f64(v: f64) -> Self {
        match Rational::from_f64(v) {
            Some(q) => BigFloat(Repr::Exact(q)),
            None => BigFloat(Repr::Float(Float::with_val(DEFAULT_PRECISION, v))),
        }
    }

    fn from_rational(q: &BigRational) -> Self {
        BigFloat::exact(q)
    }

    fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Exact(q) => q.to_f64(),
            Repr::Float(f) => f.to_f64(),
        }
    }

    fn sqrt(&self) -> Self {
        match &self.0 {
            Repr::Exact(q) => {
                if q.cmp0() == Ordering::Equal {
                    return self.clone();
                }
                BigFloat(Repr::Float(Float::with_val(DEFAULT_PRECISION, q).sqrt()))
            }
            Repr::Float(f) => BigFloat(Repr::Float(f.clone().sqrt())),
        }
    }

    fn abs(&self) -> Self {
        match &self.0 {
            Repr::Exact(q) => BigFloat(Repr::Exact(q.clone().abs())),
            Repr::Float(f) => BigFloat(Repr::Float(f.clone().abs())),
        }
    }

    fn precision(&self) -> Option<u32> {
        match &self.0 {
            Repr::Exact(_) => None,
            Repr::Float(f) => Some(f.prec()),
        }
    }

    fn at_precision(&self, bits: u32) -> Self {
        BigFloat(Repr::Float(match &self.0 {
            Repr::Exact(q) => Float::with_val(bits, q),
            Repr::Float(f) => Float::with_val(bits, f),
        }))
    }

    fn pow2(e: i32) -> Self {
        let mut q = Rational::from(1);
        if e >= 0 {
            q <<= e as u32;
        } else {
            q >>= e.unsigned_abs();
        }
        BigFloat(Repr::Exact(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_constants_stay_exact() {
        let a = BigFloat::one() + BigFloat::one();
        assert!(a.is_exact());
        assert_eq!(a.to_rational().unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn mixing_uses_the_larger_precision() {
        let a = BigFloat::with_precision_f64(1.0, 64);
        let b = BigFloat::with_precision_f64(3.0, 300);
        let c = &a / &b;
        assert_eq!(c.precision(), Some(300));
        let half = BigFloat::from_f64(0.5);
        assert_eq!((&a * &half).precision(), Some(64));
    }

    #[test]
    fn sqrt_two_squared() {
        let two = BigFloat::from_f64(2.0).at_precision(256);
        let r = two.sqrt();
        let err = (&(&r * &r) - &two).abs().to_f64();
        assert!(err < 1e-70);
    }

    #[test]
    fn ordering_across_representations() {
        let third = BigFloat::exact(&BigRational::new(1.into(), 3.into()));
        let f = BigFloat::with_precision_f64(0.3, 128);
        assert!(f < third);
        assert!(third > f);
    }

    #[test]
    fn rem_matches_truncated_division() {
        let a = BigFloat::from_f64(7.5);
        let b = BigFloat::from_f64(2.0);
        assert_eq!((&a % &b).to_f64(), 1.5);
    }
}
