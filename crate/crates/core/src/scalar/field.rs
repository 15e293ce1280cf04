use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{Backend, BigComplex, BigFloat, Real, Scalar};
use crate::linalg::{exact, LinalgError, Matrix, Solution, Tolerance};
use crate::poly::{LaurentPolynomial, Poly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("no root of {poly} near {selector}")]
    NoRootNear { poly: String, selector: String },
    #[error("{0} is never a usable value: the Alexander polynomial of a knot does not vanish at 1")]
    UnitRoot(String),
    #[error("modulus must be monic, irreducible and of positive degree: {0}")]
    BadModulus(String),
    #[error("polynomial of degree {0} exceeds the factorization cap")]
    DegreeCap(usize),
    #[error("{0}")]
    NotARoot(String),
}

/// Maximal degree of `p(x²)` handed to the factorizer.
pub const FACTOR_DEGREE_CAP: usize = 48;

/// A number field `Q[x]/(m)` together with a chosen complex root of `m`.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    modulus: Poly,
    /// `D` and `M` with `D·m(x) = D·x^d + Σ M_i x^i`, for integer reduction.
    red_den: BigInt,
    red_low: Vec<BigInt>,
    hint: Complex64,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && (self.hint - other.hint).norm() < 1e-6
    }
}

impl FieldSpec {
    /// `modulus` must be monic and irreducible; `hint` is refined to the nearest root.
    pub fn new(modulus: Poly, hint: Complex64) -> Result<Arc<FieldSpec>, FieldError> {
        let d = modulus.degree().unwrap_or(0);
        if d == 0 || !modulus.lead().is_one() {
            return Err(FieldError::BadModulus(modulus.to_string()));
        }
        let factors = modulus.factor();
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(FieldError::BadModulus(modulus.to_string()));
        }
        let roots = modulus.roots_c64();
        let root = roots
            .iter()
            .copied()
            .min_by(|a, b| (a - hint).norm().total_cmp(&(b - hint).norm()))
            .expect("positive degree");
        let den = modulus
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let red_low = modulus.coeffs()[..d]
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Ok(Arc::new(FieldSpec {
            modulus,
            red_den: den,
            red_low,
            hint: root,
        }))
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// Double-precision value of the designated root.
    pub fn hint(&self) -> Complex64 {
        self.hint
    }

    pub fn generator(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_poly(self, &Poly::x())
    }

    pub fn embedding(self: &Arc<Self>, bits: u32) -> Embedding {
        Embedding::new(self.clone(), bits)
    }
}

/// Element of a number field, `num(x) / den` reduced modulo the field's modulus.
///
/// Elements without a field are rational constants; they adopt the field of
/// the other operand.
#[derive(Clone)]
pub struct FieldElement {
    field: Option<Arc<FieldSpec>>,
    num: Vec<BigInt>,
    den: BigInt,
}

fn same_field(a: &Option<Arc<FieldSpec>>, b: &Option<Arc<FieldSpec>>) -> Option<Arc<FieldSpec>> {
    match (a, b) {
        (Some(x), Some(y)) => {
            assert!(
                Arc::ptr_eq(x, y) || **x == **y,
                "arithmetic between elements of different number fields"
            );
            Some(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl FieldElement {
    fn raw(field: Option<Arc<FieldSpec>>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = FieldElement { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num.iter_mut().for_each(|c| *c = -c.clone());
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.num.iter_mut().for_each(|c| *c = &*c / &g);
            self.den = &self.den / &g;
        }
    }

    fn reduce(&mut self) {
        let Some(f) = &self.field else { return };
        let d = f.degree();
        if self.num.len() <= d {
            return;
        }
        let den_one = f.red_den.is_one();
        for k in (d..self.num.len()).rev() {
            let t = std::mem::take(&mut self.num[k]);
            if t.is_zero() {
                continue;
            }
            if !den_one {
                for c in self.num[..k].iter_mut() {
                    *c = &*c * &f.red_den;
                }
                self.den = &self.den * &f.red_den;
            }
            for (i, m) in f.red_low.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let idx = k - d + i;
                self.num[idx] = &self.num[idx] - &t * m;
            }
        }
        self.num.truncate(d);
        self.normalize();
    }

    pub fn rational(q: &BigRational) -> Self {
        FieldElement::raw(None, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_poly(field: &Arc<FieldSpec>, p: &Poly) -> Self {
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = p
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut e = FieldElement {
            field: Some(field.clone()),
            num,
            den,
        };
        e.reduce();
        e.normalize();
        e
    }

    pub fn field(&self) -> Option<&Arc<FieldSpec>> {
        self.field.as_ref()
    }

    /// Representative polynomial of degree below the field degree.
    pub fn to_poly(&self) -> Poly {
        let d = BigRational::from_integer(self.den.clone());
        Poly::new(
            self.num
                .iter()
                .map(|c| BigRational::from_integer(c.clone()) / &d)
                .collect(),
        )
    }

    /// The rational value, if this element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn bits(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).sum::<u64>() + self.den.bits()
    }

    pub fn display_var(&self, var: &str) -> String {
        self.to_poly().display_var(var)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.display_var("x"))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.num != other.num || self.den != other.den {
            return false;
        }
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if self.num.len() > 1 => Arc::ptr_eq(a, b) || **a == **b,
            _ => true,
        }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement {
            field: None,
            num: vec![],
            den: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement {
            field: None,
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        let field = same_field(&self.field, &o.field);
        if self.is_zero() {
            let mut r = o.clone();
            r.field = field;
            return r;
        }
        if o.is_zero() {
            let mut r = self.clone();
            r.field = field;
            return r;
        }
        let n = self.num.len().max(o.num.len());
        if self.den == o.den {
            let num = (0..n)
                .map(|i| match (self.num.get(i), o.num.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => BigInt::zero(),
                })
                .collect();
            return FieldElement::raw(field, num, self.den.clone());
        }
        let num = (0..n)
            .map(|i| {
                let a = self.num.get(i).map(|a| a * &o.den).unwrap_or_default();
                let b = o.num.get(i).map(|b| b * &self.den).unwrap_or_default();
                a + b
            })
            .collect();
        FieldElement::raw(field, num, &self.den * &o.den)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        self.num.iter_mut().for_each(|c| *c = -c.clone());
        self
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self + &(-o.clone())
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let field = same_field(&self.field, &o.field);
        if self.is_zero() || o.is_zero() {
            return FieldElement {
                field,
                num: vec![],
                den: BigInt::one(),
            };
        }
        let mut num = vec![BigInt::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                num[i + j] += a * b;
            }
        }
        let mut e = FieldElement {
            field,
            num,
            den: &self.den * &o.den,
        };
        e.reduce();
        e.normalize();
        e
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Scalar for FieldElement {
    const BACKEND: Backend = Backend::Exact;

    fn from_rational(q: &BigRational) -> Self {
        FieldElement::rational(q)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            let mut r = FieldElement::rational(&q.recip());
            r.field = self.field.clone();
            return Some(r);
        }
        let f = self.field.as_ref()?;
        let (g, s, _) = Poly::gcdext(&self.to_poly(), f.modulus());
        debug_assert_eq!(g, Poly::one());
        Some(FieldElement::from_poly(f, &s))
    }

    fn to_c64(&self) -> Complex64 {
        let x = self.field.as_ref().map_or(Complex64::zero(), |f| f.hint);
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN) / den;
        }
        acc
    }

    fn is_zero_at(&self, _scale: f64) -> bool {
        self.num.is_empty()
    }

    fn pivot_weight(&self) -> f64 {
        -(self.bits() as f64)
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

/// Complex embedding of a number field at a given precision.
#[derive(Clone, Debug)]
pub struct Embedding {
    field: Arc<FieldSpec>,
    root: BigComplex,
    bits: u32,
}

impl Embedding {
    /// Refine the designated root by Newton's method to `bits` of precision.
    pub fn new(field: Arc<FieldSpec>, bits: u32) -> Self {
        let m = field.modulus().clone();
        let dm = m.derivative();
        let mut z = BigComplex::new(
            BigFloat::with_precision_f64(field.hint.re, bits),
            BigFloat::with_precision_f64(field.hint.im, bits),
        );
        let target = BigFloat::pow2(-(bits as i32) + 8);
        for _ in 0..200 {
            let v = m.eval(&z);
            let dv = dm.eval(&z);
            let Some(inv) = Scalar::inv(&dv) else { break };
            let step = v * inv;
            z = z - step.clone();
            let sn = (step.re.clone() * step.re.clone() + step.im.clone() * step.im.clone()).sqrt();
            let zn = (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt();
            if sn <= target.clone() * (zn + BigFloat::one()) {
                break;
            }
        }
        Embedding {
            field,
            root: z,
            bits,
        }
    }

    pub fn root(&self) -> &BigComplex {
        &self.root
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn embed(&self, x: &FieldElement) -> BigComplex {
        let p = x.to_poly();
        let mut acc = BigComplex::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc * &self.root + &Complex::new(BigFloat::exact(c).at_precision(self.bits), BigFloat::zero());
        }
        acc
    }

    pub fn embed_matrix(&self, m: &Matrix<FieldElement>) -> Matrix<BigComplex> {
        m.map(|x| self.embed(x))
    }
}

fn nearest(roots: &[Complex64], target: Complex64) -> Option<(usize, f64)> {
    roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, (r - target).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Accept `selector` as naming the root nearest to it when the choice is unambiguous.
fn selector_accepts(roots: &[Complex64], selector: Complex64) -> Option<usize> {
    let (i, dist) = nearest(roots, selector)?;
    let sep = roots
        .iter()
        .enumerate()
        .filter(|(j, r)| *j != i && (*r - roots[i]).norm() > 1e-9)
        .map(|(_, r)| (r - roots[i]).norm())
        .fold(f64::INFINITY, f64::min);
    let tol = (1e-2 * (1.0 + roots[i].norm())).min(0.5 * sep);
    (dist <= tol).then_some(i)
}

fn principal_sqrt(z: Complex64) -> Complex64 {
    z.sqrt()
}

fn check_degree(p: &Poly) -> Result<(), FieldError> {
    let d = p.degree().unwrap_or(0);
    if d > FACTOR_DEGREE_CAP {
        return Err(FieldError::DegreeCap(d));
    }
    Ok(())
}

/// Number field generated by a square root `λ` of the root `μ ≈ selector` of `delta`.
///
/// Finds the irreducible factor `p` of `delta` vanishing at `μ`, factors
/// `p(x²)` and keeps the factor with a root at the principal square root of
/// `μ`. Returns the field and `λ` as the class of `x`.
pub fn make_lambda_field(
    delta: &LaurentPolynomial,
    selector: Complex64,
) -> Result<(Arc<FieldSpec>, FieldElement), FieldError> {
    let poly = delta.poly();
    if poly.degree().unwrap_or(0) == 0 {
        return Err(FieldError::NoRootNear {
            poly: delta.to_string(),
            selector: selector.to_string(),
        });
    }
    let mut best: Option<(Poly, Complex64, f64)> = None;
    for (p, _) in poly.factor() {
        let roots = p.roots_c64();
        if let Some((i, dist)) = nearest(&roots, selector) {
            if best.as_ref().map_or(true, |b| dist < b.2) {
                best = Some((p.clone(), roots[i], dist));
            }
        }
    }
    let (p, mu, _) = best.ok_or_else(|| FieldError::NoRootNear {
        poly: delta.to_string(),
        selector: selector.to_string(),
    })?;
    if selector_accepts(&poly.roots_c64(), selector).is_none() && selector_accepts(&p.roots_c64(), selector).is_none() {
        return Err(FieldError::NoRootNear {
            poly: delta.to_string(),
            selector: selector.to_string(),
        });
    }
    if p == Poly::from_ints(&[-1, 1]) {
        return Err(FieldError::UnitRoot("1".into()));
    }
    let q = p.compose_square();
    check_degree(&q)?;
    let lambda = principal_sqrt(mu);
    let mut chosen: Option<(Poly, Complex64, f64)> = None;
    for (f, _) in q.factor() {
        let roots = f.roots_c64();
        if let Some((i, dist)) = nearest(&roots, lambda) {
            if chosen.as_ref().map_or(true, |c| dist < c.2) {
                chosen = Some((f.clone(), roots[i], dist));
            }
        }
    }
    let (m, root, _) = chosen.expect("p(x²) has positive degree");
    let spec = FieldSpec::new(m, root)?;
    let gen = spec.generator();
    Ok((spec, gen))
}

/// Number field generated by the root of `poly` nearest to `hint`.
pub fn field_from_root(poly: &Poly, hint: Complex64) -> Result<(Arc<FieldSpec>, FieldElement), FieldError> {
    check_degree(poly)?;
    let mut best: Option<(Poly, Complex64, f64)> = None;
    for (f, _) in poly.factor() {
        let roots = f.roots_c64();
        if let Some((i, dist)) = nearest(&roots, hint) {
            if best.as_ref().map_or(true, |b| dist < b.2) {
                best = Some((f.clone(), roots[i], dist));
            }
        }
    }
    let (m, root, _) = best.ok_or_else(|| FieldError::NoRootNear {
        poly: poly.to_string(),
        selector: hint.to_string(),
    })?;
    if selector_accepts(&poly.roots_c64(), hint).is_none() {
        return Err(FieldError::NoRootNear {
            poly: poly.to_string(),
            selector: hint.to_string(),
        });
    }
    let spec = FieldSpec::new(m, root)?;
    let gen = spec.generator();
    Ok((spec, gen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> (Arc<FieldSpec>, FieldElement) {
        make_lambda_field(&LaurentPolynomial::from_ints(0, &[1, -3, 1]), Complex64::new(2.618, 0.0)).unwrap()
    }

    #[test]
    fn golden_ratio_field() {
        let (spec, l) = golden();
        assert_eq!(*spec.modulus(), Poly::from_ints(&[-1, -1, 1]));
        let mu = &l * &l;
        let delta = Poly::from_ints(&[1, -3, 1]);
        assert!(delta.eval(&mu).is_zero());
        assert!((l.to_c64().re - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn cyclotomic_field() {
        let sel = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let (spec, l) = make_lambda_field(&LaurentPolynomial::from_ints(0, &[1, -1, 1]), sel).unwrap();
        assert_eq!(*spec.modulus(), Poly::from_ints(&[1, 0, -1, 0, 1]));
        let target = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        assert!((l.to_c64() - target).norm() < 1e-12);
        let l12 = l.pow_i64(12).unwrap();
        assert!(l12.is_one());
        assert!(!l.pow_i64(6).unwrap().is_one());
    }

    #[test]
    fn unit_root_rejected() {
        let r = make_lambda_field(&LaurentPolynomial::from_ints(0, &[-1, 1]), Complex64::new(1.0, 0.0));
        assert!(matches!(r, Err(FieldError::UnitRoot(_))));
    }

    #[test]
    fn far_selector_rejected() {
        let r = make_lambda_field(&LaurentPolynomial::from_ints(0, &[1, -3, 1]), Complex64::new(1.2, 0.0));
        assert!(matches!(r, Err(FieldError::NoRootNear { .. })));
    }

    #[test]
    fn inverse_and_embedding() {
        let (spec, l) = golden();
        let a = &(&l * &l) + &FieldElement::rational(&BigRational::new(3.into(), 7.into()));
        let ai = a.inv().unwrap();
        assert!((&a * &ai).is_one());
        let emb = spec.embedding(256);
        let m = spec.modulus().eval(emb.root());
        let err = (m.re.clone() * m.re.clone() + m.im.clone() * m.im.clone()).sqrt().to_f64();
        assert!(err < 2f64.powi(-128));
    }

    #[test]
    fn non_integral_modulus_reduces() {
        let sel = Complex64::new(0.75, 0.6614378277661477);
        let (spec, l) = make_lambda_field(&LaurentPolynomial::from_ints(0, &[2, -3, 2]), sel).unwrap();
        assert_eq!(spec.degree(), 4);
        let mu = &l * &l;
        assert!(Poly::from_ints(&[2, -3, 2]).eval(&mu).is_zero());
    }
}
