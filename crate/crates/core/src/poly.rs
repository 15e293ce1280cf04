//! Univariate polynomials with rational coefficients and their Laurent variant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use algebraics::polynomial::Polynomial as AlgPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero polynomial")]
    Zero,
}

/// Dense polynomial, coefficients stored from the constant term upwards.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_big_ints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `c·x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `p(x²)`.
    pub fn compose_square(&self) -> Self {
        let mut v = vec![BigRational::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[2 * i] = c.clone();
        }
        Poly::new(v)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &r[k - dd + j] - &c * dc;
                r[k - dd + j] = v;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s·a + t·b` monic.
    pub fn gcdext(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Signed rational content and the primitive integer polynomial with positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), vec![]);
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        let mut content = BigRational::new(g, den);
        if prim.last().is_some_and(|c| c.is_negative()) {
            prim.iter_mut().for_each(|c| *c = -c.clone());
            content = -content;
        }
        (content, prim)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Irreducible monic factors over the rationals, with multiplicities.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let (_, prim) = self.primitive_part();
        let p: AlgPoly<BigInt> = prim.into_iter().collect();
        let mut out: Vec<(Poly, usize)> = p
            .factor()
            .polynomial_factors
            .into_iter()
            .map(|f| {
                let ints = f.polynomial.into_coefficients();
                (Poly::from_big_ints(&ints).monic(), f.power)
            })
            .collect();
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        out
    }

    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + &S::from_rational(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// All complex roots in double precision (Aberth iteration plus Newton polish).
    pub fn roots_c64(&self) -> Vec<Complex64> {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return vec![],
        };
        let p = self.monic();
        let c: Vec<Complex64> = p
            .coeffs
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(0.0), 0.0))
            .collect();
        let eval = |z: Complex64| {
            let mut v = Complex64::zero();
            let mut dv = Complex64::zero();
            for a in c.iter().rev() {
                dv = dv * z + v;
                v = v * z + a;
            }
            (v, dv)
        };
        let radius = 1.0
            + c[..d]
                .iter()
                .map(|a| a.norm())
                .fold(0.0f64, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..d {
                let (v, dv) = eval(z[i]);
                if v.norm() == 0.0 {
                    continue;
                }
                let ratio = v / dv;
                let sum: Complex64 = (0..d)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).inv())
                    .sum();
                let w = ratio / (Complex64::one() - ratio * sum);
                if w.is_finite() {
                    z[i] -= w;
                    moved = moved.max(w.norm() / z[i].norm().max(1.0));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let (v, dv) = eval(*zi);
                if dv.norm() > 0.0 {
                    let step = v / dv;
                    if step.is_finite() {
                        *zi -= step;
                    }
                }
            }
        }
        z
    }

    /// Parse text such as `x^4 - x^2 + 1` or `2t^2-3*t+2` in the variable `var`.
    pub fn parse(text: &str, var: char) -> Result<Poly, PolyError> {
        parse_poly(text, var)
    }

    pub fn display_var(&self, var: &str) -> String {
        let terms: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64, c.clone()))
            .collect();
        render_terms(&terms, var)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::from_ints(&[1])
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display_var("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

fn render_terms(terms: &[(i64, BigRational)], var: &str) -> String {
    let mut out = String::new();
    for (e, c) in terms.iter().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if a.is_integer() {
            a.to_integer().to_string()
        } else {
            format!("({a})")
        };
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&coeff);
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_poly(text: &str, var: char) -> Result<Poly, PolyError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| PolyError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_uint = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return None;
        }
        bytes[start..*pos].iter().collect::<String>().parse().ok()
    };
    let mut acc: Vec<BigRational> = vec![];
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            if first {
                return Err(err(pos, "empty polynomial"));
            }
            break;
        }
        let mut sign = BigRational::one();
        if bytes[pos] == '+' || bytes[pos] == '-' {
            if bytes[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;
        let mut coeff: Option<BigRational> = None;
        if let Some(n) = read_uint(&mut pos) {
            let mut q = BigRational::from_integer(n);
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '/' {
                pos += 1;
                skip_ws(&mut pos);
                let d = read_uint(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                if d.is_zero() {
                    return Err(err(pos, "zero denominator"));
                }
                q /= BigRational::from_integer(d);
            }
            coeff = Some(q);
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != var {
                    return Err(err(pos, "expected variable after '*'"));
                }
            }
        }
        let mut exp = 0usize;
        if pos < bytes.len() && bytes[pos] == var {
            pos += 1;
            exp = 1;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '^' {
                pos += 1;
                skip_ws(&mut pos);
                let e = read_uint(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                exp = e.to_usize().ok_or_else(|| err(pos, "exponent too large"))?;
            }
        } else if coeff.is_none() {
            return Err(err(pos, "expected a term"));
        }
        let c = sign * coeff.unwrap_or_else(BigRational::one);
        if acc.len() <= exp {
            acc.resize(exp + 1, BigRational::zero());
        }
        acc[exp] += c;
    }
    Ok(Poly::new(acc))
}

/// Laurent polynomial `t^low · p(t)` with `p(0) ≠ 0` unless zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    poly: Poly,
}

impl LaurentPolynomial {
    pub fn new(low: i64, poly: Poly) -> Self {
        if poly.is_zero() {
            return LaurentPolynomial { low: 0, poly };
        }
        let shift = poly.coeffs.iter().take_while(|c| c.is_zero()).count();
        let coeffs = poly.coeffs[shift..].to_vec();
        LaurentPolynomial {
            low: low + shift as i64,
            poly: Poly::new(coeffs),
        }
    }

    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        LaurentPolynomial::new(low, Poly::from_ints(coeffs))
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        LaurentPolynomial::new(e, Poly::constant(c))
    }

    pub fn t_pow(e: i64) -> Self {
        LaurentPolynomial::monomial(BigRational::one(), e)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.poly.degree().map_or(0, |d| d as i64)
    }

    /// The polynomial `t^{-low} · self`.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.poly.coeffs()
    }

    /// Width `high - low`, the degree of the associated ordinary polynomial.
    pub fn span(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn eval<S: Scalar>(&self, t: &S) -> Option<S> {
        let v = self.poly.eval(t);
        Some(v * &t.pow_i64(self.low)?)
    }

    pub fn eval_c64(&self, t: Complex64) -> Complex64 {
        self.poly.eval_c64(t) * t.powi(self.low as i32)
    }

    pub fn at_one(&self) -> BigRational {
        self.poly.coeffs.iter().cloned().sum()
    }

    pub fn at_minus_one(&self) -> BigRational {
        let v = self.poly.eval_rational(&rat(-1));
        if self.low.rem_euclid(2) == 1 {
            -v
        } else {
            v
        }
    }

    /// `p(t^{-1})`.
    pub fn invert_variable(&self) -> Self {
        let mut c = self.poly.coeffs.clone();
        c.reverse();
        LaurentPolynomial::new(-self.high(), Poly::new(c))
    }

    /// Representative with lowest exponent 0 and positive leading coefficient.
    pub fn normalized_unit(&self) -> Self {
        let p = if self.poly.lead().is_negative() {
            -self.poly.clone()
        } else {
            self.poly.clone()
        };
        LaurentPolynomial::new(0, p)
    }

    /// Palindromic up to a shift.
    pub fn is_symmetric(&self) -> bool {
        let c = &self.poly.coeffs;
        c.iter().eq(c.iter().rev())
    }

    /// Equal up to multiplication by `±t^k`.
    pub fn unit_equivalent(&self, other: &Self) -> bool {
        self.normalized_unit() == other.normalized_unit()
    }

    /// Gcd in `Z[t^{±1}]` of integral Laurent polynomials, normalized as in
    /// [`LaurentPolynomial::normalized_unit`].
    pub fn integer_gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalized_unit();
        }
        if b.is_zero() {
            return a.normalized_unit();
        }
        let (ca, _) = a.poly.primitive_part();
        let (cb, _) = b.poly.primitive_part();
        let content = {
            let ca = ca.abs();
            let cb = cb.abs();
            let num = ca.numer().gcd(cb.numer());
            let den = ca.denom().lcm(cb.denom());
            BigRational::new(num, den)
        };
        let g = Poly::gcd(&a.poly, &b.poly);
        let (_, prim) = g.primitive_part();
        let p = Poly::from_big_ints(&prim).scale(&content);
        LaurentPolynomial::new(0, p).normalized_unit()
    }

    pub fn display_var(&self, var: &str) -> String {
        let terms: Vec<(i64, BigRational)> = self
            .poly
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect();
        render_terms(&terms, var)
    }

    /// Integer coefficients from lowest to highest exponent, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.poly
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Zero for LaurentPolynomial {
    fn zero() -> Self {
        LaurentPolynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl One for LaurentPolynomial {
    fn one() -> Self {
        LaurentPolynomial::new(0, Poly::one())
    }
}

fn align(a: &LaurentPolynomial, b: &LaurentPolynomial) -> (i64, Poly, Poly) {
    if a.is_zero() {
        return (b.low, Poly::zero(), b.poly.clone());
    }
    if b.is_zero() {
        return (a.low, a.poly.clone(), Poly::zero());
    }
    let low = a.low.min(b.low);
    let shift = |p: &LaurentPolynomial| -> Poly {
        let k = (p.low - low) as usize;
        &p.poly * &Poly::monomial(BigRational::one(), k)
    };
    (low, shift(a), shift(b))
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let (low, a, b) = align(self, o);
        LaurentPolynomial::new(low, &a + &b)
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let (low, a, b) = align(self, o);
        LaurentPolynomial::new(low, &a - &b)
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::new(self.low + o.low, &self.poly * &o.poly)
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: LaurentPolynomial) -> LaurentPolynomial {
        &self + &o
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: LaurentPolynomial) -> LaurentPolynomial {
        &self - &o
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: LaurentPolynomial) -> LaurentPolynomial {
        &self * &o
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.low, -self.poly)
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.display_var("t"))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

/// Serialized as `{ "low": i64, "coeffs": ["p/q", ...] }`.
#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    low: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        LaurentRepr {
            low: self.low,
            coeffs: self.poly.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LaurentRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPolynomial::new(r.low, Poly::new(coeffs)))
    }
}

/// Split of a polynomial by root multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    /// `p / gcd(p, p')`: every root of `p`, each once.
    pub simple_part: Poly,
    /// `gcd(p, p')`: the roots of multiplicity at least two.
    pub multiple_part: Poly,
}

impl RootSplit {
    /// A root of `p` is simple iff it is not a root of the multiple part.
    pub fn is_simple_root<S: Scalar>(&self, x: &S) -> bool {
        self.simple_part.eval(x).is_zero_at(1.0) && !self.multiple_part.eval(x).is_zero_at(1.0)
    }
}

pub fn squarefree_and_simple_roots(p: &LaurentPolynomial) -> Result<RootSplit, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let q = p.poly();
    let g = Poly::gcd(q, &q.derivative());
    Ok(RootSplit {
        simple_part: q.exact_div(&g).monic(),
        multiple_part: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let p = Poly::parse("x^4 - x^2 + 1", 'x').unwrap();
        assert_eq!(p, Poly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(p.to_string(), "x^4 - x^2 + 1");
        let q = Poly::parse("2t^2-3*t+2", 't').unwrap();
        assert_eq!(q, Poly::from_ints(&[2, -3, 2]));
        let r = Poly::parse("1/2 x - 3/4", 'x').unwrap();
        assert_eq!(r.coeff(0), BigRational::new((-3).into(), 4.into()));
        assert!(Poly::parse("x^", 'x').is_err());
        assert!(Poly::parse("", 'x').is_err());
        assert!(Poly::parse("x x", 'x').is_err());
    }

    #[test]
    fn divrem_reconstructs() {
        let a = Poly::from_ints(&[3, 0, 2, 5, -1]);
        let b = Poly::from_ints(&[1, 2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcdext_bezout() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (g, s, t) = Poly::gcdext(&a, &b);
        assert_eq!(g, Poly::from_ints(&[1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn factor_golden_square() {
        let f = Poly::from_ints(&[1, 0, -3, 0, 1]).factor();
        assert_eq!(f.len(), 2);
        assert!(f.iter().any(|(p, _)| *p == Poly::from_ints(&[-1, -1, 1])));
        assert!(f.iter().any(|(p, _)| *p == Poly::from_ints(&[-1, 1, 1])));
        let cyc = Poly::from_ints(&[1, 0, -1, 0, 1]).factor();
        assert_eq!(cyc.len(), 1);
    }

    #[test]
    fn roots_of_trefoil_polynomial() {
        let r = Poly::from_ints(&[1, -1, 1]).roots_c64();
        let target = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert!(r.iter().any(|z| (z - target).norm() < 1e-12));
        assert!(r.iter().any(|z| (z - target.conj()).norm() < 1e-12));
    }

    #[test]
    fn simple_root_split() {
        let p = LaurentPolynomial::new(0, &Poly::from_ints(&[-2, 1]) * &(&Poly::from_ints(&[-2, 1]) * &Poly::from_ints(&[-3, 1])));
        let s = squarefree_and_simple_roots(&p).unwrap();
        assert_eq!(s.simple_part, &Poly::from_ints(&[-2, 1]) * &Poly::from_ints(&[-3, 1]));
        assert_eq!(s.multiple_part, Poly::from_ints(&[-2, 1]));
        let g = squarefree_and_simple_roots(&LaurentPolynomial::from_ints(0, &[1, -3, 1])).unwrap();
        assert_eq!(g.multiple_part, Poly::one());
        let one = squarefree_and_simple_roots(&LaurentPolynomial::one()).unwrap();
        assert_eq!(one.simple_part.degree(), Some(0));
    }

    #[test]
    fn laurent_normalization() {
        let p = LaurentPolynomial::from_ints(-1, &[-1, 3, -1]);
        assert_eq!(p.normalized_unit(), LaurentPolynomial::from_ints(0, &[1, -3, 1]));
        assert_eq!(p.at_one(), rat(1));
        assert!(p.is_symmetric());
        assert_eq!(p.invert_variable(), p);
        let g = LaurentPolynomial::integer_gcd(
            &LaurentPolynomial::from_ints(0, &[4, -6, 4]),
            &LaurentPolynomial::from_ints(3, &[2, -1, -1, 2]),
        );
        assert_eq!(g, LaurentPolynomial::from_ints(0, &[2, -3, 2]));
        assert_eq!(p.display_var("t"), "-t + 3 - t^-1");
    }
}
