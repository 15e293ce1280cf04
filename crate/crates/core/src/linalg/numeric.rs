//! Rank-revealing kernels for complex floating-point matrices.
//!
//! Ranks come from Householder bidiagonalization followed by Sturm counts on
//! the Golub-Kahan tridiagonal, which locates how many singular values exceed
//! a threshold without computing them. Kernels, least-squares solves and
//! pseudo-inverses use a one-sided Jacobi SVD.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{LinalgError, Matrix, Solution, Tolerance};
use crate::scalar::real::{complex_precision, norm_sqr};
use crate::scalar::{Real, DEFAULT_PRECISION};

type C<R> = Complex<R>;

/// Largest precision carried by any entry, or the default for exact input.
pub fn working_precision<R: Real>(m: &Matrix<C<R>>) -> u32 {
    m.data()
        .iter()
        .filter_map(complex_precision)
        .max()
        .unwrap_or(DEFAULT_PRECISION)
}

fn vnorm<R: Real>(v: &[C<R>]) -> R {
    v.iter()
        .fold(R::zero(), |acc, z| acc + norm_sqr(z))
        .sqrt()
}

fn frobenius<R: Real>(m: &Matrix<C<R>>) -> R {
    vnorm(m.data())
}

/// Inner product `⟨a, b⟩ = Σ conj(a_i) b_i`.
pub fn dot<R: Real>(a: &[C<R>], b: &[C<R>]) -> C<R> {
    a.iter()
        .zip(b)
        .fold(C::zero(), |acc, (x, y)| acc + x.conj() * y.clone())
}

fn phase<R: Real>(z: &C<R>) -> C<R> {
    let n = norm_sqr(z).sqrt();
    if n.is_zero() {
        C::one()
    } else {
        z.unscale(n)
    }
}

/// Absolute values of the diagonal and superdiagonal of a bidiagonal form.
fn bidiagonalize<R: Real>(m: &Matrix<C<R>>) -> (Vec<R>, Vec<R>) {
    let a0 = if m.rows() >= m.cols() { m.clone() } else { m.transpose() };
    let (rows, cols) = (a0.rows(), a0.cols());
    let mut a: Vec<Vec<C<R>>> = a0.to_rows();
    let two = R::one() + R::one();
    let mut d = Vec::with_capacity(cols);
    let mut e = Vec::with_capacity(cols.saturating_sub(1));
    for k in 0..cols {
        let x: Vec<C<R>> = (k..rows).map(|i| a[i][k].clone()).collect();
        let xn = vnorm(&x);
        d.push(xn.clone());
        if !xn.is_zero() {
            let alpha = -phase(&x[0]).scale(xn);
            let mut v = x;
            v[0] = v[0].clone() - alpha;
            let vv = v.iter().fold(R::zero(), |acc, z| acc + norm_sqr(z));
            if !vv.is_zero() {
                for j in k + 1..cols {
                    let s = (k..rows).fold(C::zero(), |acc, i| {
                        acc + v[i - k].conj() * a[i][j].clone()
                    });
                    let f = s.scale(two.clone()).unscale(vv.clone());
                    for i in k..rows {
                        let upd = a[i][j].clone() - v[i - k].clone() * f.clone();
                        a[i][j] = upd;
                    }
                }
            }
        }
        if k + 1 < cols {
            let y: Vec<C<R>> = (k + 1..cols).map(|j| a[k][j].clone()).collect();
            let yn = vnorm(&y);
            e.push(yn.clone());
            if !yn.is_zero() {
                let mut w: Vec<C<R>> = y.iter().map(|z| z.conj()).collect();
                let alpha = -phase(&w[0]).scale(yn);
                w[0] = w[0].clone() - alpha;
                let ww = w.iter().fold(R::zero(), |acc, z| acc + norm_sqr(z));
                if !ww.is_zero() {
                    for row in a.iter_mut().take(rows).skip(k + 1) {
                        let s = (k + 1..cols).fold(C::zero(), |acc, j| {
                            acc + row[j].clone() * w[j - k - 1].clone()
                        });
                        let f = s.scale(two.clone()).unscale(ww.clone());
                        for j in k + 1..cols {
                            let upd = row[j].clone() - f.clone() * w[j - k - 1].conj();
                            row[j] = upd;
                        }
                    }
                }
            }
        }
    }
    (d, e)
}

/// Number of singular values of the bidiagonal `(d, e)` strictly above `x > 0`.
fn count_above<R: Real>(d: &[R], e: &[R], x: &R) -> usize {
    let n = d.len();
    if n == 0 {
        return 0;
    }
    let mut off: Vec<R> = Vec::with_capacity(2 * n - 1);
    for i in 0..n {
        off.push(d[i].clone());
        if i + 1 < n {
            off.push(e[i].clone());
        }
    }
    let tiny = x.clone() * R::pow2(-200);
    let mut below = 0usize;
    let mut q = -x.clone();
    if q < R::zero() {
        below += 1;
    }
    for b in off.iter() {
        let prev = if q.is_zero() { -tiny.clone() } else { q.clone() };
        q = -x.clone() - b.clone() * b.clone() / prev;
        if q < R::zero() {
            below += 1;
        }
    }
    2 * n - below
}

/// Numeric rank with an indeterminacy check.
pub fn rank<R: Real>(m: &Matrix<C<R>>, tol: &Tolerance) -> Result<usize, LinalgError> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let prec = working_precision(m);
    let norm = frobenius(m);
    if norm.is_zero() {
        return Ok(0);
    }
    let (d, e) = bidiagonalize(m);
    let rb = tol.rank_bits_at(prec) as i32;
    let band = tol.band_bits_at(prec) as i32;
    let tau = norm.clone() * R::pow2(-rb);
    let lo = tau.clone() * R::pow2(-band);
    let hi = tau.clone() * R::pow2(band);
    let above_lo = count_above(&d, &e, &lo);
    let above_hi = count_above(&d, &e, &hi);
    if above_lo != above_hi {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..60 {
            let mid = (a.clone() * b.clone()).sqrt();
            if count_above(&d, &e, &mid) == above_hi {
                b = mid;
            } else {
                a = mid;
            }
        }
        return Err(LinalgError::Indeterminate {
            sigma: a.to_f64(),
            threshold: tau.to_f64(),
        });
    }
    Ok(above_hi)
}

/// Thin singular value decomposition `M = U·diag(σ)·V*`.
#[derive(Clone, Debug)]
pub struct Svd<R: Real> {
    /// Left singular vectors, one per singular value (zero vectors where `σ = 0`).
    pub u: Vec<Vec<C<R>>>,
    pub sigma: Vec<R>,
    /// Right singular vectors, an orthonormal basis of the domain.
    pub v: Vec<Vec<C<R>>>,
    pub precision: u32,
    pub norm: R,
}

/// One-sided Jacobi SVD; singular values sorted in decreasing order.
pub fn svd<R: Real>(m: &Matrix<C<R>>) -> Result<Svd<R>, LinalgError> {
    let (rows, cols) = (m.rows(), m.cols());
    let prec = working_precision(m);
    let mut a: Vec<Vec<C<R>>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C<R>>> = (0..cols)
        .map(|j| {
            let mut e = vec![C::zero(); cols];
            e[j] = C::one();
            e
        })
        .collect();
    let eps = R::pow2(-(prec as i32) + 4);
    let total = frobenius(m);
    let floor = (eps.clone() * total.clone()) * (eps.clone() * total);
    let mut converged = false;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = a[p].iter().fold(R::zero(), |acc, z| acc + norm_sqr(z));
                let beta = a[q].iter().fold(R::zero(), |acc, z| acc + norm_sqr(z));
                let gamma = dot(&a[p], &a[q]);
                let g = norm_sqr(&gamma).sqrt();
                if g.is_zero()
                    || alpha <= floor
                    || beta <= floor
                    || g.clone() <= eps.clone() * (alpha.clone() * beta.clone()).sqrt()
                {
                    continue;
                }
                rotated = true;
                let ph = gamma.unscale(g.clone()).conj();
                for z in a[q].iter_mut() {
                    *z = z.clone() * ph.clone();
                }
                for z in v[q].iter_mut() {
                    *z = z.clone() * ph.clone();
                }
                let two = R::one() + R::one();
                let zeta = (beta - alpha) / (two * g);
                let root = (R::one() + zeta.clone() * zeta.clone()).sqrt();
                let t = if zeta >= R::zero() {
                    R::one() / (zeta.clone() + root)
                } else {
                    -(R::one() / (-zeta.clone() + root))
                };
                let c = R::one() / (R::one() + t.clone() * t.clone()).sqrt();
                let s = c.clone() * t;
                rotate(&mut a, p, q, &c, &s);
                rotate(&mut v, p, q, &c, &s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence("Jacobi SVD sweeps exhausted".into()));
    }
    let mut order: Vec<(R, usize)> = a.iter().enumerate().map(|(j, col)| (vnorm(col), j)).collect();
    order.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut u = Vec::with_capacity(cols);
    let mut sigma = Vec::with_capacity(cols);
    let mut vv = Vec::with_capacity(cols);
    for (s, j) in order {
        let col = if s.is_zero() {
            vec![C::zero(); rows]
        } else {
            a[j].iter().map(|z| z.unscale(s.clone())).collect()
        };
        u.push(col);
        sigma.push(s);
        vv.push(v[j].clone());
    }
    Ok(Svd {
        u,
        sigma,
        v: vv,
        precision: prec,
        norm: frobenius(m),
    })
}

fn rotate<R: Real>(cols: &mut [Vec<C<R>>], p: usize, q: usize, c: &R, s: &R) {
    let (left, right) = cols.split_at_mut(q);
    let ap = &mut left[p];
    let aq = &mut right[0];
    for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
        let nx = x.clone().scale(c.clone()) - y.clone().scale(s.clone());
        let ny = x.clone().scale(s.clone()) + y.clone().scale(c.clone());
        *x = nx;
        *y = ny;
    }
}

impl<R: Real> Svd<R> {
    /// Number of singular values above the threshold, checking the band.
    pub fn rank(&self, tol: &Tolerance) -> Result<usize, LinalgError> {
        let rb = tol.rank_bits_at(self.precision) as i32;
        let band = tol.band_bits_at(self.precision) as i32;
        let tau = self.norm.clone() * R::pow2(-rb);
        let lo = tau.clone() * R::pow2(-band);
        let hi = tau.clone() * R::pow2(band);
        if let Some(s) = self.sigma.iter().find(|s| **s > lo && **s < hi) {
            return Err(LinalgError::Indeterminate {
                sigma: s.to_f64(),
                threshold: tau.to_f64(),
            });
        }
        Ok(self.sigma.iter().filter(|s| **s >= hi).count())
    }

    /// `V_k Σ_k^{-1} U_k* b` using the leading `k` singular triples.
    pub fn solve_truncated(&self, b: &[C<R>], k: usize) -> Vec<C<R>> {
        let n = self.v.first().map_or(0, |v| v.len());
        let mut x = vec![C::zero(); n];
        for i in 0..k.min(self.sigma.len()) {
            if self.sigma[i].is_zero() {
                continue;
            }
            let coef = dot(&self.u[i], b).unscale(self.sigma[i].clone());
            for (xj, vj) in x.iter_mut().zip(&self.v[i]) {
                *xj = xj.clone() + vj.clone() * coef.clone();
            }
        }
        x
    }
}

pub fn nullspace<R: Real>(m: &Matrix<C<R>>, tol: &Tolerance) -> Result<Vec<Vec<C<R>>>, LinalgError> {
    if m.cols() == 0 {
        return Ok(vec![]);
    }
    if m.rows() == 0 || frobenius(m).is_zero() {
        return Ok((0..m.cols())
            .map(|j| {
                let mut e = vec![C::zero(); m.cols()];
                e[j] = C::one();
                e
            })
            .collect());
    }
    let s = svd(m)?;
    let r = s.rank(tol)?;
    Ok(s.v[r..].to_vec())
}

pub fn solve<R: Real>(
    m: &Matrix<C<R>>,
    b: &[C<R>],
    tol: &Tolerance,
) -> Result<Solution<C<R>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let bn = vnorm(b);
    if m.cols() == 0 || frobenius(m).is_zero() {
        if bn.is_zero() {
            return Ok(Solution::Consistent(vec![C::zero(); m.cols()]));
        }
        return Ok(Solution::Inconsistent { residual: bn.to_f64() });
    }
    let s = svd(m)?;
    let r = s.rank(tol)?;
    let x = s.solve_truncated(b, r);
    let mx = m.mul_vec(&x)?;
    let res: Vec<C<R>> = mx.iter().zip(b).map(|(a, c)| a.clone() - c.clone()).collect();
    let rn = vnorm(&res);
    let scale = {
        let xn = vnorm(&x) * s.norm.clone();
        if xn > bn {
            xn
        } else {
            bn
        }
    };
    let rb = tol.rank_bits_at(s.precision) as i32;
    if rn > scale * R::pow2(-rb) {
        return Ok(Solution::Inconsistent { residual: rn.to_f64() });
    }
    Ok(Solution::Consistent(x))
}

/// Minimum-norm least-squares solution of `m · x = b` treating `m` as having rank `k`.
///
/// Householder QR with column pivoting keeps the leading `k` rows `W` of the
/// triangular factor; the result is `P · W* (W W*)^{-1} (Q* b)_{..k}`.
pub fn min_norm_solve<R: Real>(m: &Matrix<C<R>>, b: &[C<R>], k: usize) -> Result<Vec<C<R>>, LinalgError> {
    let (rows, ncols) = (m.rows(), m.cols());
    if b.len() != rows {
        return Err(LinalgError::Dimension(format!("right-hand side of length {} for {rows} rows", b.len())));
    }
    let k = k.min(rows).min(ncols);
    let mut cols: Vec<Vec<C<R>>> = (0..ncols).map(|j| m.column(j)).collect();
    let mut perm: Vec<usize> = (0..ncols).collect();
    let mut c = b.to_vec();
    let two = R::one() + R::one();
    for i in 0..k {
        let tail_norm = |v: &Vec<C<R>>| v[i..].iter().fold(R::zero(), |a, z| a + norm_sqr(z));
        let (best, _) = (i..ncols)
            .map(|j| (j, tail_norm(&cols[j])))
            .fold((i, R::zero()), |acc, (j, n)| if n > acc.1 { (j, n) } else { acc });
        cols.swap(i, best);
        perm.swap(i, best);
        let norm = tail_norm(&cols[i]).sqrt();
        if norm.is_zero() {
            return Err(LinalgError::Singular);
        }
        let alpha = -(phase(&cols[i][i]) * C::new(norm, R::zero()));
        let mut v: Vec<C<R>> = cols[i][i..].to_vec();
        v[0] = v[0].clone() - alpha.clone();
        let vv = v.iter().fold(R::zero(), |a, z| a + norm_sqr(z));
        if vv.is_zero() {
            continue;
        }
        let reflect = |x: &mut [C<R>]| {
            let f = dot(&v, x).scale(two.clone()).unscale(vv.clone());
            for (xi, vi) in x.iter_mut().zip(&v) {
                *xi = xi.clone() - vi.clone() * f.clone();
            }
        };
        for col in cols.iter_mut().skip(i + 1) {
            reflect(&mut col[i..]);
        }
        reflect(&mut c[i..]);
        cols[i][i] = alpha;
        for z in cols[i][i + 1..].iter_mut() {
            *z = C::zero();
        }
    }
    // Gram system (W W*) y = c_k by Gaussian elimination with partial pivoting.
    let w = |r: usize, j: usize| cols[j][r].clone();
    let mut g: Vec<Vec<C<R>>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|s| (0..ncols).fold(C::zero(), |acc, j| acc + w(r, j) * w(s, j).conj()))
                .collect()
        })
        .collect();
    let mut y: Vec<C<R>> = c[..k].to_vec();
    for i in 0..k {
        let p = (i..k)
            .max_by(|&a, &b| {
                norm_sqr(&g[a][i])
                    .partial_cmp(&norm_sqr(&g[b][i]))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(i);
        g.swap(i, p);
        y.swap(i, p);
        let piv = g[i][i].clone();
        if norm_sqr(&piv).is_zero() {
            return Err(LinalgError::Singular);
        }
        for r in i + 1..k {
            let f = g[r][i].clone() / piv.clone();
            for s in i..k {
                g[r][s] = g[r][s].clone() - f.clone() * g[i][s].clone();
            }
            y[r] = y[r].clone() - f * y[i].clone();
        }
    }
    for i in (0..k).rev() {
        let mut acc = y[i].clone();
        for s in i + 1..k {
            acc = acc - g[i][s].clone() * y[s].clone();
        }
        y[i] = acc / g[i][i].clone();
    }
    let mut x = vec![C::zero(); ncols];
    for j in 0..ncols {
        let z = (0..k).fold(C::zero(), |acc, r| acc + w(r, j).conj() * y[r].clone());
        x[perm[j]] = z;
    }
    Ok(x)
}

/// Greedy left-to-right independent columns by Gram-Schmidt with reorthogonalization.
pub fn pivot_columns<R: Real>(m: &Matrix<C<R>>, tol: &Tolerance) -> Result<Vec<usize>, LinalgError> {
    let prec = working_precision(m);
    let norm = frobenius(m);
    if norm.is_zero() {
        return Ok(vec![]);
    }
    let rb = tol.rank_bits_at(prec) as i32;
    let band = tol.band_bits_at(prec) as i32;
    let tau = norm * R::pow2(-rb);
    let lo = tau.clone() * R::pow2(-band);
    let hi = tau.clone() * R::pow2(band);
    let mut basis: Vec<Vec<C<R>>> = Vec::new();
    let mut pivots = Vec::new();
    for j in 0..m.cols() {
        let mut v = m.column(j);
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = vi.clone() - qi.clone() * c.clone();
                }
            }
        }
        let n = vnorm(&v);
        if n > lo && n < hi {
            return Err(LinalgError::Indeterminate {
                sigma: n.to_f64(),
                threshold: tau.to_f64(),
            });
        }
        if n >= hi {
            basis.push(v.iter().map(|z| z.unscale(n.clone())).collect());
            pivots.push(j);
        }
    }
    Ok(pivots)
}

/// Orthonormal basis of the span of `vectors` (tolerance relative to the largest input).
pub fn orthonormalize<R: Real>(vectors: &[Vec<C<R>>], rel_bits: u32) -> Vec<Vec<C<R>>> {
    let scale = vectors
        .iter()
        .map(|v| vnorm(v))
        .fold(R::zero(), |a, b| if b > a { b } else { a });
    if scale.is_zero() {
        return vec![];
    }
    let tau = scale * R::pow2(-(rel_bits as i32));
    let mut basis: Vec<Vec<C<R>>> = Vec::new();
    for v0 in vectors {
        let mut v = v0.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = vi.clone() - qi.clone() * c.clone();
                }
            }
        }
        let n = vnorm(&v);
        if n > tau {
            basis.push(v.iter().map(|z| z.unscale(n.clone())).collect());
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{BigComplex, BigFloat};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_of_simple_matrices() {
        let tol = Tolerance::default();
        let id: Matrix<Complex64> = Matrix::identity(4);
        assert_eq!(rank(&id, &tol).unwrap(), 4);
        let z: Matrix<Complex64> = Matrix::zeros(3, 5);
        assert_eq!(rank(&z, &tol).unwrap(), 0);
        let m: Matrix<Complex64> = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m, &tol).unwrap(), 2);
        assert_eq!(rank(&m.transpose(), &tol).unwrap(), 2);
    }

    #[test]
    fn complex_rank_deficient() {
        let tol = Tolerance::default();
        let u = [c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0)];
        let v = [c(0.0, 1.0), c(2.0, 2.0)];
        let m = Matrix::from_fn(3, 2, |i, j| u[i] * v[j]);
        assert_eq!(rank(&m, &tol).unwrap(), 1);
    }

    #[test]
    fn indeterminate_band_is_reported() {
        let tol = Tolerance::default();
        let m: Matrix<Complex64> = Matrix::diagonal(&[c(1.0, 0.0), c(1e-8, 0.0)]);
        assert!(matches!(rank(&m, &tol), Err(LinalgError::Indeterminate { .. })));
    }

    #[test]
    fn svd_reconstructs_and_nullspace() {
        let tol = Tolerance::default();
        let m: Matrix<Complex64> = Matrix::from_fn(3, 4, |i, j| c((i + 2 * j) as f64, (i * j) as f64 - 1.0));
        let s = svd(&m).unwrap();
        for j in 0..4 {
            let mut col = vec![Complex64::zero(); 3];
            for k in 0..4 {
                let coef = s.v[k][j].conj().scale(s.sigma[k]);
                for i in 0..3 {
                    col[i] += s.u[k][i] * coef;
                }
            }
            for i in 0..3 {
                assert!((col[i] - m[(i, j)]).norm() < 1e-12);
            }
        }
        let ns = nullspace(&m, &tol).unwrap();
        assert_eq!(ns.len(), 4 - rank(&m, &tol).unwrap());
        for v in ns {
            let mv = m.mul_vec(&v).unwrap();
            assert!(mv.iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn big_precision_rank() {
        let tol = Tolerance::default();
        let third = BigFloat::with_precision_f64(1.0, 256) / BigFloat::with_precision_f64(3.0, 256);
        let a = BigComplex::new(third.clone(), BigFloat::zero());
        let b = BigComplex::new(third.clone() * third.clone(), third);
        let m = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => a.clone(),
            (0, 1) => b.clone(),
            (1, 0) => a.clone() * a.clone(),
            _ => a.clone() * b.clone(),
        });
        assert_eq!(rank(&m, &tol).unwrap(), 1);
        assert_eq!(working_precision(&m), 256);
    }

    #[test]
    fn min_norm_matches_svd() {
        let m: Matrix<Complex64> = Matrix::from_fn(5, 4, |i, j| c((i * 3 + j) as f64 % 4.0 - 1.5, (i + 2 * j) as f64 % 3.0));
        let mut m2 = m.clone();
        for i in 0..5 {
            m2[(i, 3)] = m[(i, 0)] * 2.0 - m[(i, 1)];
        }
        let b: Vec<Complex64> = (0..5).map(|i| c(i as f64, 1.0)).collect();
        let s = svd(&m2).unwrap();
        let want = s.solve_truncated(&b, 3);
        let got = min_norm_solve(&m2, &b, 3).unwrap();
        for (a, b) in want.iter().zip(&got) {
            assert!((a - b).norm() < 1e-10, "{a} {b}");
        }
    }

    #[test]
    fn solve_and_pivots() {
        let tol = Tolerance::default();
        let m: Matrix<Complex64> = Matrix::from_i64(&[&[1, 1, 0], &[2, 2, 1]]);
        let x = solve(&m, &[c(1.0, 0.0), c(3.0, 0.0)], &tol).unwrap().consistent().unwrap();
        let mx = m.mul_vec(&x).unwrap();
        assert!((mx[0] - c(1.0, 0.0)).norm() < 1e-12 && (mx[1] - c(3.0, 0.0)).norm() < 1e-12);
        assert_eq!(pivot_columns(&m, &tol).unwrap(), vec![0, 2]);
        let sq: Matrix<Complex64> = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            solve(&sq, &[c(1.0, 0.0), c(0.0, 0.0)], &tol).unwrap(),
            Solution::Inconsistent { .. }
        ));
    }
}
