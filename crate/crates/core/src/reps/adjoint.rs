//! The adjoint module `sl_n`.
//!
//! Basis order: `E_ij` for `i ≠ j` in row-major order, then
//! `H_i = E_ii − E_{i+1,i+1}` for `i = 1, …, n − 1`.

use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{ModuleAction, ModuleKind, RepError, Representation};

pub fn sl_basis<S: Scalar>(n: usize) -> Vec<Matrix<S>> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::zeros(n, n);
                m[(i, j)] = S::one();
                out.push(m);
            }
        }
    }
    for i in 0..n - 1 {
        let mut m = Matrix::zeros(n, n);
        m[(i, i)] = S::one();
        m[(i + 1, i + 1)] = -S::one();
        out.push(m);
    }
    out
}

/// Name of basis element `k`, such as `E12` or `H1`.
pub fn sl_label(n: usize, k: usize) -> String {
    let off = n * (n - 1);
    if k < off {
        let i = k / (n - 1);
        let r = k % (n - 1);
        let j = if r >= i { r + 1 } else { r };
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("H{}", k - off + 1)
    }
}

/// Coordinates of a traceless matrix in the basis of [`sl_basis`].
pub fn sl_coords<S: Scalar>(x: &Matrix<S>) -> Vec<S> {
    let n = x.rows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(x[(i, j)].clone());
            }
        }
    }
    let mut h = S::zero();
    for i in 0..n - 1 {
        h = h + &x[(i, i)];
        out.push(h.clone());
    }
    out
}

pub fn sl_from_coords<S: Scalar>(c: &[S], n: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[(i, j)] = c[k].clone();
                k += 1;
            }
        }
    }
    for i in 0..n - 1 {
        let h = &c[k + i];
        m[(i, i)] = m[(i, i)].clone() + h;
        m[(i + 1, i + 1)] = m[(i + 1, i + 1)].clone() - h;
    }
    m
}

/// Matrix of `x ↦ g x g^{-1}` on `sl_n`.
pub fn adjoint_matrix<S: Scalar>(g: &Matrix<S>, g_inv: &Matrix<S>) -> Matrix<S> {
    let n = g.rows();
    let dim = n * n - 1;
    let mut out = Matrix::zeros(dim, dim);
    let outer = |i: usize, j: usize| Matrix::from_fn(n, n, |a, b| g[(a, i)].clone() * &g_inv[(j, b)]);
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let col = sl_coords(&outer(i, j));
                for (r, v) in col.into_iter().enumerate() {
                    out[(r, k)] = v;
                }
                k += 1;
            }
        }
    }
    for i in 0..n - 1 {
        let m = &outer(i, i) - &outer(i + 1, i + 1);
        for (r, v) in sl_coords(&m).into_iter().enumerate() {
            out[(r, k)] = v;
        }
        k += 1;
    }
    out
}

/// `Ad ∘ ρ` on `sl_n` for an `n`-dimensional representation.
pub fn adjoint_action<S: Scalar>(rho: &Representation<S>) -> Result<ModuleAction<S>, RepError> {
    use crate::foxcalc::Action;
    let n = rho.n();
    if n < 2 {
        return Err(RepError::InvalidParam("sl_n needs n >= 2".into()));
    }
    let gens = rho.images().len();
    let images = (0..gens)
        .map(|g| adjoint_matrix(rho.generator(g), rho.generator_inv(g)))
        .collect();
    let inverses = (0..gens)
        .map(|g| adjoint_matrix(rho.generator_inv(g), rho.generator(g)))
        .collect();
    Ok(ModuleAction::with_inverses(ModuleKind::Adjoint { n }, images, inverses))
}
