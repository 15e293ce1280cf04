//! Elimination with exact zero tests, for field backends.
//!
//! Ranks use fraction-free (Bareiss) elimination, so intermediate entries stay
//! minors of the input and do not accumulate denominators. Kernels and solves
//! reduce to reduced row echelon form.

use super::{LinalgError, Matrix, Solution};
use crate::scalar::Scalar;

fn is_zero<S: Scalar>(v: &S) -> bool {
    v.is_zero() || v.is_zero_at(1.0)
}

fn best_pivot<S: Scalar>(a: &Matrix<S>, col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for i in from..a.rows() {
        let v = &a[(i, col)];
        if is_zero(v) {
            continue;
        }
        let w = v.pivot_weight();
        if best.map_or(true, |(_, bw)| w > bw) {
            best = Some((i, w));
        }
    }
    best.map(|(i, _)| i)
}

/// Fraction-free row echelon form; returns the pivot columns.
fn bareiss<S: Scalar>(m: &Matrix<S>) -> Vec<usize> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev_inv: Option<S> = None;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = best_pivot(&a, c, r) else {
            continue;
        };
        a.swap_rows(p, r);
        let piv = a[(r, c)].clone();
        for i in r + 1..rows {
            let f = a[(i, c)].clone();
            let f_zero = is_zero(&f);
            for j in c + 1..cols {
                let mut v = piv.clone() * &a[(i, j)];
                if !f_zero {
                    let t = f.clone() * &a[(r, j)];
                    v = v - t;
                }
                if let Some(pi) = &prev_inv {
                    v = v * pi;
                }
                a[(i, j)] = v;
            }
            a[(i, c)] = S::zero();
        }
        prev_inv = Some(piv.inv().expect("nonzero pivot is invertible"));
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    bareiss(m).len()
}

pub fn pivot_columns<S: Scalar>(m: &Matrix<S>) -> Vec<usize> {
    bareiss(m)
}

/// Reduced row echelon form and its pivot columns.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = best_pivot(&a, c, r) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].inv().expect("nonzero pivot is invertible");
        for j in c..cols {
            let v = a[(r, j)].clone() * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)].clone();
            if is_zero(&f) {
                continue;
            }
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = a[(i, j)].clone() - f.clone() * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn nullspace<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn solve<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Result<Solution<S>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let aug = Matrix::hstack(&[m, &Matrix::column_vector(b)])?;
    let (r, pivots) = rref(&aug);
    let cols = m.cols();
    if pivots.last() == Some(&cols) {
        return Ok(Solution::Inconsistent { residual: 1.0 });
    }
    let mut x = vec![S::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, cols)].clone();
    }
    Ok(Solution::Consistent(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(rank(&Matrix::<Q>::identity(3)), 3);
        assert_eq!(rank(&Matrix::<Q>::zeros(3, 4)), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m: Matrix<Q> = Matrix::from_i64(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 3, 6, 10]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(pivot_columns(&m), vec![1, 3]);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m: Matrix<Q> = Matrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m: Matrix<Q> = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let ok = solve(&m, &[Q::from_integer(1.into()), Q::from_integer(2.into())]).unwrap();
        let x = ok.consistent().unwrap();
        assert_eq!(&x[0] + &x[1], Q::from_integer(1.into()));
        let bad = solve(&m, &[Q::from_integer(1.into()), Q::from_integer(3.into())]).unwrap();
        assert!(matches!(bad, Solution::Inconsistent { .. }));
    }
}
