//! Dense matrices over any [`Scalar`], and the rank-revealing kernels behind them.

pub mod exact;
pub mod numeric;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{Backend, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(
        "numerically indeterminate rank: a singular value {sigma:e} lies within the band around the threshold {threshold:e}"
    )]
    Indeterminate { sigma: f64, threshold: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
}

/// Rank-decision parameters for the numeric backend.
///
/// A singular value counts as nonzero above `‖M‖·2^{-rank_bits}`; a value
/// within a factor `2^{band_bits}` of that threshold makes the verdict
/// indeterminate. Both default to fractions of the working precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    pub rank_bits: Option<u32>,
    pub band_bits: Option<u32>,
}

impl Tolerance {
    pub fn rank_bits_at(&self, precision: u32) -> u32 {
        self.rank_bits.unwrap_or(precision / 2)
    }

    pub fn band_bits_at(&self, precision: u32) -> u32 {
        self.band_bits.unwrap_or(precision / 4)
    }
}

/// Result of a linear solve that may be inconsistent.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<S> {
    Consistent(Vec<S>),
    Inconsistent {
        /// Size of the part of the right-hand side outside the column space.
        residual: f64,
    },
}

impl<S> Solution<S> {
    pub fn consistent(self) -> Option<Vec<S>> {
        match self {
            Solution::Consistent(x) => Some(x),
            Solution::Inconsistent { .. } => None,
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self, LinalgError> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::Dimension(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |i, j| S::from_i64(rows[i][j]))
    }

    pub fn diagonal(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn column_vector(v: &[S]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Conjugate transpose, when the scalar type has a conjugation.
    pub fn adjoint(&self) -> Option<Self> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].conj()?);
            }
        }
        Some(Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    let prod = a.clone() * b;
                    let cur = std::mem::replace(&mut out.data[idx], S::zero());
                    out.data[idx] = cur + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Copy `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(r + i, c + j)].clone())
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self, LinalgError> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return Err(LinalgError::Dimension("vstack with unequal column counts".into()));
        }
        let mut data = Vec::new();
        for p in parts {
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix {
            rows: parts.iter().map(|p| p.rows).sum(),
            cols,
            data,
        })
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self, LinalgError> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(LinalgError::Dimension("hstack with unequal row counts".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_block(0, c, p);
            c += p.cols;
        }
        Ok(out)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>], rows: usize) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Sum of `|entry|` in double precision, used as a magnitude scale.
    ///
    /// Exact backends do not need a scale and get `1`.
    pub fn abs_sum(&self) -> f64 {
        match S::BACKEND {
            Backend::Exact => 1.0,
            Backend::Numeric => self.data.iter().map(|v| v.to_c64().norm()).sum(),
        }
    }

    /// Frobenius norm in double precision.
    pub fn frobenius_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.to_c64().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Entrywise zero test at the magnitude of this matrix.
    pub fn is_zero_matrix(&self) -> bool {
        let scale = self.abs_sum().max(1.0);
        self.data.iter().all(|v| v.is_zero_at(scale))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (self - &Self::identity(self.rows)).is_zero_matrix()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<S, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let scale = self.abs_sum().max(1.0);
        let mut det = S::one();
        for k in 0..n {
            let p = match pick_pivot(&a, k, k, scale) {
                Some(p) => p,
                None => return Ok(S::zero()),
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let piv = a[(k, k)].clone();
            let inv = piv.inv().ok_or(LinalgError::Singular)?;
            det = det * &piv;
            for i in k + 1..n {
                let f = a[(i, k)].clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a[(i, j)].clone() - f.clone() * &a[(k, j)];
                    a[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.abs_sum().max(1.0);
        for k in 0..n {
            let p = pick_pivot(&a, k, k, scale).ok_or(LinalgError::Singular)?;
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pinv = a[(k, k)].inv().ok_or(LinalgError::Singular)?;
            for j in 0..n {
                let v = a[(k, j)].clone() * &pinv;
                a[(k, j)] = v;
                let w = inv[(k, j)].clone() * &pinv;
                inv[(k, j)] = w;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a[(i, j)].clone() - f.clone() * &a[(k, j)];
                    a[(i, j)] = v;
                    let w = inv[(i, j)].clone() - f.clone() * &inv[(k, j)];
                    inv[(i, j)] = w;
                }
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Matrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self[(i / o.rows, j / o.cols)].clone() * &o[(i % o.rows, j % o.cols)]
        })
    }

    pub fn rank(&self, tol: &Tolerance) -> Result<usize, LinalgError> {
        S::rank(self, tol)
    }

    pub fn nullspace(&self, tol: &Tolerance) -> Result<Vec<Vec<S>>, LinalgError> {
        S::nullspace(self, tol)
    }
}

fn pick_pivot<S: Scalar>(a: &Matrix<S>, col: usize, from: usize, scale: f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for i in from..a.rows {
        let v = &a[(i, col)];
        if v.is_zero_at(scale) {
            continue;
        }
        let w = v.pivot_weight();
        if best.map_or(true, |(_, bw)| w > bw) {
            best = Some((i, w));
        }
    }
    best.map(|(i, _)| i)
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, S: Scalar> Mul<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, o: &Matrix<S>) -> Matrix<S> {
        self.try_mul(o).expect("matrix dimensions agree")
    }
}

impl<'a, S: Scalar> Add<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix dimensions agree");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix dimensions agree");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Matrix exponential by scaling and squaring with a Taylor series.
///
/// The series runs until terms drop below `2^{-bits}` relative to the scaled norm.
pub fn expm<S: Scalar>(m: &Matrix<S>, bits: u32) -> Matrix<S> {
    let n = m.rows();
    let norm = m.frobenius_f64();
    let mut squarings = 0u32;
    let mut scaled = m.clone();
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
        let f = S::from_rational(&num_rational::BigRational::new(
            1.into(),
            num_bigint::BigInt::from(1u8) << squarings,
        ));
        scaled = m.scale(&f);
    }
    let snorm = scaled.frobenius_f64();
    let mut result = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    let mut k = 1i64;
    let mut bound = 1.0f64;
    let target = (-(bits as f64) * std::f64::consts::LN_2).exp();
    loop {
        term = (&term * &scaled).scale(&S::from_rational(&num_rational::BigRational::new(
            1.into(),
            k.into(),
        )));
        result = &result + &term;
        bound *= snorm / k as f64;
        if bound < target || snorm == 0.0 || k > 400 {
            break;
        }
        k += 1;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Principal logarithm of a matrix close to the identity, by the Mercator series.
pub fn logm_near_identity<S: Scalar>(m: &Matrix<S>, bits: u32) -> Result<Matrix<S>, LinalgError> {
    let n = m.rows();
    let y = m - &Matrix::identity(n);
    let ynorm = y.frobenius_f64();
    if ynorm >= 0.5 {
        return Err(LinalgError::NoConvergence(format!(
            "logarithm series needs ‖M − I‖ < 1/2, got {ynorm:e}"
        )));
    }
    let mut result = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    let target = (-(bits as f64) * std::f64::consts::LN_2).exp();
    let mut bound = 1.0f64;
    for k in 1..2000i64 {
        power = &power * &y;
        let c = S::from_rational(&num_rational::BigRational::new(
            if k % 2 == 1 { 1.into() } else { (-1).into() },
            k.into(),
        ));
        result = &result + &power.scale(&c);
        bound *= ynorm;
        if bound < target || ynorm == 0.0 {
            break;
        }
    }
    Ok(result)
}

impl<S: Scalar> Zero for Matrix<S> {
    fn zero() -> Self {
        Matrix {
            rows: 0,
            cols: 0,
            data: vec![],
        }
    }
    fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<S: Scalar> Add for Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn inverse_and_det_exact() {
        let m: Matrix<Q> = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), Q::from_integer(18.into()));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn singular_inverse_fails() {
        let m: Matrix<Q> = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(LinalgError::Singular));
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn expm_of_nilpotent() {
        let m: Matrix<Complex64> = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let e = expm(&m, 53);
        assert!((e[(0, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn expm_log_roundtrip() {
        let m: Matrix<Complex64> = Matrix::from_fn(3, 3, |i, j| Complex64::new(0.01 * (i as f64 - j as f64), 0.02 * (i * j) as f64));
        let e = expm(&m, 53);
        let l = logm_near_identity(&e, 53).unwrap();
        assert!((&l - &m).frobenius_f64() < 1e-13);
        let big = m.scale(&Complex64::new(300.0, 0.0));
        let eb = expm(&big, 53);
        let half = expm(&big.scale(&Complex64::new(0.5, 0.0)), 53);
        assert!((&(&half * &half) - &eb).frobenius_f64() / eb.frobenius_f64() < 1e-10);
    }

    #[test]
    fn kron_dimensions() {
        let a: Matrix<Q> = Matrix::identity(2);
        let b: Matrix<Q> = Matrix::from_i64(&[&[1, 2, 3]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 6));
        assert_eq!(k[(1, 5)], Q::from_integer(3.into()));
    }
}
