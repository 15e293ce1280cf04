//! Symmetric powers `r_n` of the standard representation of `SL(2)`.

use num_rational::BigRational;

use crate::knots::KnotPresentation;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{Provenance, RepError, Representation};

fn convolve<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y;
        }
    }
    out
}

fn powers<S: Scalar>(form: [S; 2], k: usize) -> Vec<Vec<S>> {
    let mut out = vec![vec![S::one()]];
    for i in 1..=k {
        let next = convolve(&out[i - 1], &form);
        out.push(next);
    }
    out
}

/// `r_n(A)` on the basis `e_l = X^{l-1} Y^{n-l}`, `l = 1, …, n`, where
/// `A = [[a, b], [c, d]]` acts by `X ↦ dX − bY`, `Y ↦ −cX + aY`.
pub fn sym_power_matrix<S: Scalar>(a: &Matrix<S>, n: usize) -> Matrix<S> {
    assert!(a.rows() == 2 && a.cols() == 2, "r_n takes a 2x2 matrix");
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let (aa, b, c, d) = (a[(0, 0)].clone(), a[(0, 1)].clone(), a[(1, 0)].clone(), a[(1, 1)].clone());
    // Coefficient vectors indexed by the power of X.
    let x_img = powers([-b, d], n - 1);
    let y_img = powers([aa, -c], n - 1);
    let mut m = Matrix::zeros(n, n);
    for l in 1..=n {
        let col = convolve(&x_img[l - 1], &y_img[n - l]);
        for (i, v) in col.into_iter().enumerate() {
            m[(i, l - 1)] = v;
        }
    }
    m
}

/// `r_n ∘ ρ` for a two-dimensional `ρ`.
pub fn symmetric_power<S: Scalar>(
    p: &KnotPresentation,
    rho: &Representation<S>,
    n: usize,
) -> Result<Representation<S>, RepError> {
    if rho.n() != 2 {
        return Err(RepError::InvalidParam("symmetric powers need a 2-dimensional representation".into()));
    }
    if n == 0 {
        return Err(RepError::InvalidParam("n must be at least 1".into()));
    }
    let images = rho.images().iter().map(|m| sym_power_matrix(m, n)).collect();
    let tol = super::DEFAULT_RESIDUAL_TOL.max(rho.residual() * (n * n) as f64 * 10.0);
    Representation::with_tolerance(p, images, Provenance::SymmetricPower { n }, tol)
}

/// Compare `tr Ad r_n(A) = tr r_n(A) · tr r_n(A^{-1}) − 1` with `Σ_{i=1}^{n−1} tr r_{2i+1}(A)`.
pub fn clebsch_gordan_check<S: Scalar>(a: &Matrix<S>, n: usize) -> bool {
    let ainv = Matrix::from_rows(
        vec![
            vec![a[(1, 1)].clone(), -a[(0, 1)].clone()],
            vec![-a[(1, 0)].clone(), a[(0, 0)].clone()],
        ],
        2,
    )
    .expect("2x2");
    let t = sym_power_matrix(a, n).trace();
    let ti = sym_power_matrix(&ainv, n).trace();
    let lhs = t * &ti - &S::one();
    let mut rhs = S::zero();
    for i in 1..n {
        rhs = rhs + &sym_power_matrix(a, 2 * i + 1).trace();
    }
    let scale = 1.0 + lhs.to_c64().norm() + rhs.to_c64().norm();
    (lhs - &rhs).is_zero_at(scale)
}

/// Matrix of `e_l ↦ (1/l) ē_{l+1}` from `R_{n−3}` into `R_{n−1}/⟨e_1⟩` on the basis `ē_2, …, ē_n`.
pub fn ladder_intertwiner<S: Scalar>(n: usize) -> Matrix<S> {
    assert!(n >= 3, "the ladder map needs n >= 3");
    let mut m = Matrix::zeros(n - 1, n - 2);
    for l in 1..=n - 2 {
        m[(l - 1, l - 1)] = S::from_rational(&BigRational::new(1.into(), (l as i64).into()));
    }
    m
}

/// Whether the ladder map intertwines `r_{n−2}(B)` with the action of `r_n(B)`
/// on `R_{n−1}/⟨e_1⟩`, for an upper-triangular `B`.
pub fn ladder_intertwines<S: Scalar>(b: &Matrix<S>, n: usize) -> bool {
    let big = sym_power_matrix(b, n);
    if !(1..n).all(|i| big[(i, 0)].is_zero_at(big.abs_sum().max(1.0))) {
        return false;
    }
    let quotient = big.block(1, 1, n - 1, n - 1);
    let small = sym_power_matrix(b, n - 2);
    let phi = ladder_intertwiner::<S>(n);
    (&(&quotient * &phi) - &(&phi * &small)).is_zero_matrix()
}
