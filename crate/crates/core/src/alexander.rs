//! Alexander matrices and polynomials, and the root conditions on `λ`.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::foxcalc::fox_derivative;
use crate::knots::KnotPresentation;
use crate::linalg::Matrix;
use crate::poly::{squarefree_and_simple_roots, LaurentPolynomial, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("the first elementary ideal is zero; the presentation is not a knot group")]
    ZeroPolynomial,
    #[error("lambda^2 is not a root of the Alexander polynomial")]
    NotARoot,
    #[error("n must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("lambda^(2k) = 1 at k = {0} although every hypothesis holds")]
    UnitCondition(usize),
}

/// Matrix over `Z[t^±1]` with entry `(j, i)` the abelianized `∂r_j/∂g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPolynomial>,
}

impl AlexanderMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, j: usize, i: usize) -> &LaurentPolynomial {
        &self.entries[j * self.cols + i]
    }

    /// Substitute a value for `t`; `None` if `t` is not invertible.
    pub fn evaluate<S: Scalar>(&self, t: &S) -> Option<Matrix<S>> {
        let vals: Option<Vec<S>> = self.entries.iter().map(|e| e.eval(t)).collect();
        let vals = vals?;
        Some(Matrix::from_fn(self.rows, self.cols, |j, i| vals[j * self.cols + i].clone()))
    }
}

pub fn alexander_matrix(p: &KnotPresentation) -> AlexanderMatrix {
    let g = p.generator_count();
    let rows = p.relators().len();
    let mut entries = Vec::with_capacity(rows * g);
    for r in p.relators() {
        for i in 0..g {
            entries.push(fox_derivative(r, i).abelianize(p));
        }
    }
    AlexanderMatrix { rows, cols: g, entries }
}

/// Determinant over `Q[t]` by fraction-free elimination.
fn poly_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n {
        let Some(p) = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].degree().unwrap_or(0))
        else {
            return Poly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev);
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a.last().map_or(Poly::one(), |r| r[n - 1].clone());
    if sign {
        -d
    } else {
        d
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Laurent minor on the chosen rows and columns, up to a unit.
fn minor(m: &AlexanderMatrix, rows: &[usize], cols: &[usize]) -> LaurentPolynomial {
    let a: Vec<Vec<Poly>> = rows
        .iter()
        .map(|&j| {
            let low = cols
                .iter()
                .map(|&i| m.entry(j, i))
                .filter(|e| !e.is_zero())
                .map(LaurentPolynomial::low)
                .min()
                .unwrap_or(0);
            cols.iter()
                .map(|&i| {
                    let e = m.entry(j, i);
                    if e.is_zero() {
                        Poly::zero()
                    } else {
                        let shift = (e.low() - low) as usize;
                        let mut c = vec![Zero::zero(); shift];
                        c.extend(e.coeffs().iter().cloned());
                        Poly::new(c)
                    }
                })
                .collect()
        })
        .collect();
    LaurentPolynomial::new(0, poly_det(a))
}

/// Generator of the first elementary ideal, with lowest exponent 0 and positive leading coefficient.
pub fn alexander_polynomial(p: &KnotPresentation) -> Result<LaurentPolynomial, AlexanderError> {
    let m = alexander_matrix(p);
    let g = m.cols();
    if g == 0 {
        return Err(AlexanderError::ZeroPolynomial);
    }
    if g == 1 {
        // Every relator has weight 0, so each abelianized derivative vanishes.
        return if m.rows() == 0 || (0..m.rows()).all(|j| m.entry(j, 0).is_zero()) {
            Ok(LaurentPolynomial::one())
        } else {
            Err(AlexanderError::ZeroPolynomial)
        };
    }
    if m.rows() < g - 1 {
        return Err(AlexanderError::ZeroPolynomial);
    }
    let row_sets = combinations(m.rows(), g - 1);
    let mut acc = LaurentPolynomial::zero();
    for deleted in 0..g {
        let cols: Vec<usize> = (0..g).filter(|&i| i != deleted).collect();
        for rows in &row_sets {
            let d = minor(&m, rows, &cols);
            if !d.is_zero() {
                acc = LaurentPolynomial::integer_gcd(&acc, &d);
            }
        }
    }
    if acc.is_zero() {
        Err(AlexanderError::ZeroPolynomial)
    } else {
        Ok(acc.normalized_unit())
    }
}

/// Zero test for `Δ(x)` relative to the size of its terms.
fn vanishes_at<S: Scalar>(p: &LaurentPolynomial, x: &S) -> Option<bool> {
    let v = p.eval(x)?;
    let r = x.to_c64().norm();
    let scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * r.powi(p.low() as i32 + i as i32))
        .sum();
    Some(v.is_zero_at(scale.max(1.0)))
}

/// Hypotheses on `(Δ, λ, n)` under which the smoothness statements apply.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport<S> {
    pub lambda: S,
    pub n: usize,
    pub simple_root: bool,
    /// `k ↦ Δ(λ^{2k}) ≠ 0` for `2 ≤ k ≤ n − 1`.
    pub power_conditions: BTreeMap<usize, bool>,
    /// `k ↦ λ^{2k} ≠ 1` for `2 ≤ k ≤ n − 1`.
    pub unit_conditions: BTreeMap<usize, bool>,
    pub verdict: bool,
}

impl<S> HypothesisReport<S> {
    /// Smallest `k` whose power condition fails.
    pub fn first_failure(&self) -> Option<usize> {
        self.power_conditions.iter().find(|(_, ok)| !**ok).map(|(k, _)| *k)
    }
}

pub fn check_hypotheses<S: Scalar>(
    delta: &LaurentPolynomial,
    lambda: &S,
    n: usize,
) -> Result<HypothesisReport<S>, AlexanderError> {
    if n < 2 {
        return Err(AlexanderError::InvalidN(n));
    }
    if delta.is_zero() {
        return Err(AlexanderError::ZeroPolynomial);
    }
    let mu = lambda.clone() * lambda;
    if !vanishes_at(delta, &mu).ok_or(AlexanderError::ZeroLambda)? {
        return Err(AlexanderError::NotARoot);
    }
    let split = squarefree_and_simple_roots(delta).map_err(|_| AlexanderError::ZeroPolynomial)?;
    let multiple = LaurentPolynomial::new(0, split.multiple_part.clone());
    let simple_root = !vanishes_at(&multiple, &mu).unwrap_or(true);

    let mut power_conditions = BTreeMap::new();
    let mut unit_conditions = BTreeMap::new();
    let one = S::one();
    let mut pow = mu.clone();
    for k in 2..n {
        pow = pow * &mu;
        power_conditions.insert(k, !vanishes_at(delta, &pow).unwrap_or(true));
        let diff = pow.clone() - &one;
        let scale = 1.0 + pow.to_c64().norm();
        unit_conditions.insert(k, !diff.is_zero_at(scale));
    }
    let verdict = simple_root && power_conditions.values().all(|&ok| ok);
    if verdict {
        if let Some((&k, _)) = unit_conditions.iter().find(|(_, ok)| !**ok) {
            return Err(AlexanderError::UnitCondition(k));
        }
    }
    Ok(HypothesisReport {
        lambda: lambda.clone(),
        n,
        simple_root,
        power_conditions,
        unit_conditions,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{braid_presentation, parse_presentation, pd_presentation, KnotTable};
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn lp(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_ints(0, c)
    }

    #[test]
    fn table_polynomials_from_braids_and_pd() {
        for e in &KnotTable::bundled().knots {
            let want = lp(e.alexander.as_ref().unwrap());
            if let Some(b) = &e.braid {
                let d = alexander_polynomial(&braid_presentation(b).unwrap()).unwrap();
                assert_eq!(d, want, "braid {}", e.name);
            }
            if let Some(pd) = &e.pd {
                let d = alexander_polynomial(&pd_presentation(pd).unwrap()).unwrap();
                assert_eq!(d, want, "pd {}", e.name);
            }
        }
    }

    #[test]
    fn two_generator_trefoil() {
        let p = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
        let m = alexander_matrix(&p);
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(*m.entry(0, 0), lp(&[1, -1, 1]));
        assert_eq!(alexander_polynomial(&p).unwrap(), lp(&[1, -1, 1]));
    }

    #[test]
    fn values_at_plus_and_minus_one() {
        for e in &KnotTable::bundled().knots {
            let d = alexander_polynomial(&e.presentation().unwrap()).unwrap();
            assert!(d.at_one().abs().is_one(), "{}", e.name);
            let m = d.at_minus_one();
            assert!(m.is_integer() && (m.to_integer() % BigInt::from(2)) != BigInt::zero(), "{}", e.name);
            assert!(d.is_symmetric());
        }
    }

    #[test]
    fn trefoil_at_root_drops_rank() {
        use crate::scalar::FieldSpec;
        let f = FieldSpec::new(Poly::from_ints(&[1, -1, 1]), num_complex::Complex64::new(0.5, 0.866)).unwrap();
        let t = f.generator();
        let p = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
        let m = alexander_matrix(&p).evaluate(&t).unwrap();
        assert!(m[(0, 0)].is_zero());
    }
}
