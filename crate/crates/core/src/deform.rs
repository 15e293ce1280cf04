//! Deformations of a representation: tangent cocycles, formal power series
//! solutions order by order, and Newton continuation onto the relator variety.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{cocycle_basis, coboundary_spanning_set, CohomologyError};
use crate::foxcalc::{fox_matrix, Action, MatrixAction};
use crate::knots::{KnotPresentation, Word};
use crate::linalg::numeric::{min_norm_solve, rank as numeric_rank, working_precision};
use crate::linalg::{expm, LinalgError, Matrix, Solution, Tolerance};
use crate::reps::{
    adjoint_action, adjoint_matrix, irreducibility_test, sl_coords, sl_from_coords, CocycleVector, Provenance,
    RepError, Representation,
};
use crate::scalar::{Real, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeformError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("the direction is not a cocycle of the adjoint module")]
    NotACocycle,
    #[error("step t = {t} is outside [0, {t_max}]")]
    InvalidStep { t: f64, t_max: f64 },
    #[error("Newton iteration did not converge (last t = {t}, residuals {history:?})")]
    NoConvergence { t: f64, history: Vec<f64> },
}

/// `Z¹(Γ; sl_ρ)` split as `B¹` plus a complement.
#[derive(Clone, Debug)]
pub struct TangentSpace<S> {
    pub z1: Vec<CocycleVector<S>>,
    pub b1: Vec<CocycleVector<S>>,
    pub complement: Vec<CocycleVector<S>>,
}

/// Bases of `Z¹`, `B¹` and a complement of `B¹` in `Z¹`.
///
/// `B¹` is spanned by coboundaries of the `sl_n` basis vectors. The
/// complement consists of the cocycles that are pivot columns of `[B¹ | Z¹]`.
pub fn tangent_cocycles<S: Scalar>(
    p: &KnotPresentation,
    rho: &Representation<S>,
    tol: &Tolerance,
) -> Result<TangentSpace<S>, DeformError> {
    let act = adjoint_action(rho)?;
    let gens = p.generator_count();
    let z1 = cocycle_basis(p, &act, tol)?;
    let spanning = coboundary_spanning_set(gens, &act);
    let rows = gens * act.dim();
    let mut cols: Vec<Vec<S>> = spanning.iter().map(CocycleVector::flat).collect();
    cols.extend(z1.iter().map(CocycleVector::flat));
    let pivots = if rows == 0 {
        vec![]
    } else {
        S::pivot_columns(&Matrix::from_columns(&cols, rows), tol)?
    };
    let nb = spanning.len();
    let b1 = pivots.iter().filter(|&&j| j < nb).map(|&j| spanning[j].clone()).collect();
    let complement = pivots.iter().filter(|&&j| j >= nb).map(|&j| z1[j - nb].clone()).collect();
    Ok(TangentSpace { z1, b1, complement })
}

/// Matrix power series truncated after `t^K`, stored by coefficient.
type Series<S> = Vec<Matrix<S>>;

fn constant<S: Scalar>(m: &Matrix<S>, order: usize) -> Series<S> {
    let n = m.rows();
    let mut s = vec![Matrix::zeros(n, n); order + 1];
    s[0] = m.clone();
    s
}

fn series_mul<S: Scalar>(a: &Series<S>, b: &Series<S>) -> Series<S> {
    let order = a.len() - 1;
    let n = a[0].rows();
    let mut out = vec![Matrix::zeros(n, n); order + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero_matrix() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn rational<S: Scalar>(num: i64, den: i64) -> S {
    S::from_rational(&BigRational::new(num.into(), den.into()))
}

/// `exp(U)` for a series with `U(0) = 0`.
fn series_exp<S: Scalar>(u: &Series<S>) -> Series<S> {
    let order = u.len() - 1;
    let n = u[0].rows();
    let mut out = constant(&Matrix::identity(n), order);
    let mut power = out.clone();
    for m in 1..=order as i64 {
        power = series_mul(&power, u);
        let c: S = rational(1, m);
        power = power.iter().map(|x| x.scale(&c)).collect();
        for (o, p) in out.iter_mut().zip(&power) {
            *o = &*o + p;
        }
    }
    out
}

/// `log(I + N)` for a series with `N(0) = 0`.
fn series_log1p<S: Scalar>(nser: &Series<S>) -> Series<S> {
    let order = nser.len() - 1;
    let n = nser[0].rows();
    let mut out = vec![Matrix::zeros(n, n); order + 1];
    let mut power = constant(&Matrix::identity(n), order);
    for m in 1..=order as i64 {
        power = series_mul(&power, nser);
        let c: S = rational(if m % 2 == 1 { 1 } else { -1 }, m);
        for (o, p) in out.iter_mut().zip(&power) {
            *o = &*o + &p.scale(&c);
        }
    }
    out
}

/// Generator series `exp(Σ_j t^j u_j(g)) ρ(g)` and their inverses, truncated after `t^order`.
fn generator_series<S: Scalar>(
    rho: &Representation<S>,
    terms: &[CocycleVector<S>],
    order: usize,
) -> (Vec<Series<S>>, Vec<Series<S>>) {
    let n = rho.n();
    let gens = rho.images().len();
    let mut fwd = Vec::with_capacity(gens);
    let mut inv = Vec::with_capacity(gens);
    for g in 0..gens {
        let mut u = vec![Matrix::zeros(n, n); order + 1];
        for (j, term) in terms.iter().enumerate() {
            if j + 1 <= order {
                u[j + 1] = sl_from_coords(term.value(g), n);
            }
        }
        let neg: Series<S> = u.iter().map(|x| x.scale(&-S::one())).collect();
        fwd.push(series_mul(&series_exp(&u), &constant(rho.generator(g), order)));
        inv.push(series_mul(&constant(rho.generator_inv(g), order), &series_exp(&neg)));
    }
    (fwd, inv)
}

fn word_series<S: Scalar>(w: &Word, fwd: &[Series<S>], inv: &[Series<S>], n: usize, order: usize) -> Series<S> {
    let mut acc = constant(&Matrix::identity(n), order);
    for &(g, e) in w.letters() {
        acc = series_mul(&acc, if e > 0 { &fwd[g] } else { &inv[g] });
    }
    acc
}

fn traceless<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let n = m.rows();
    let shift = m.trace() * &rational::<S>(1, n as i64);
    m - &Matrix::identity(n).scale(&shift)
}

/// Truncated formal deformation `u_1, …, u_k`.
#[derive(Clone, Debug)]
pub struct DeformationSeries<S> {
    pub terms: Vec<CocycleVector<S>>,
    /// `‖ζ_{j+1}‖` for each solved order `j + 1 ≥ 2`, measured before solving.
    pub obstruction_norms: Vec<f64>,
    /// `x` with `u_1 = δx`, when the series is the conjugation curve `exp(−tx) ρ exp(tx)`.
    pub conjugating: Option<Vec<S>>,
}

impl<S: Scalar> DeformationSeries<S> {
    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// Generator images `exp(Σ_j t^j u_j(g)) ρ(g)`, with the exponential evaluated to `bits` bits.
    pub fn images_at(&self, rho: &Representation<S>, t: &S, bits: u32) -> Vec<Matrix<S>> {
        let n = rho.n();
        (0..rho.images().len())
            .map(|g| {
                let mut u = Matrix::zeros(n, n);
                let mut tp = S::one();
                for term in &self.terms {
                    tp = tp * t;
                    u = &u + &sl_from_coords(term.value(g), n).scale(&tp);
                }
                &expm(&u, bits) * rho.generator(g)
            })
            .collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DeformationSeries<T> {
        DeformationSeries {
            terms: self.terms.iter().map(|c| c.map(&f)).collect(),
            obstruction_norms: self.obstruction_norms.clone(),
            conjugating: self.conjugating.as_ref().map(|x| x.iter().map(&f).collect()),
        }
    }
}

/// Result of [`formal_integrate`].
#[derive(Clone, Debug)]
pub enum FormalOutcome<S> {
    Series(DeformationSeries<S>),
    /// No `u_order` exists; `partial` holds the terms below it.
    Obstructed {
        order: usize,
        partial: DeformationSeries<S>,
        residual: f64,
    },
}

impl<S> FormalOutcome<S> {
    pub fn series(&self) -> &DeformationSeries<S> {
        match self {
            FormalOutcome::Series(s) => s,
            FormalOutcome::Obstructed { partial, .. } => partial,
        }
    }

    pub fn obstructed_at(&self) -> Option<usize> {
        match self {
            FormalOutcome::Series(_) => None,
            FormalOutcome::Obstructed { order, .. } => Some(*order),
        }
    }
}

/// Solve `δx = u` for `x ∈ sl_n`.
fn coboundary_preimage<S: Scalar, A: Action<S>>(
    act: &A,
    gens: usize,
    u: &CocycleVector<S>,
    tol: &Tolerance,
) -> Result<Option<Vec<S>>, DeformError> {
    let d = act.dim();
    let cols: Vec<Vec<S>> = coboundary_spanning_set(gens, act).iter().map(CocycleVector::flat).collect();
    let m = Matrix::from_columns(&cols, gens * d);
    Ok(S::solve(&m, &u.flat(), tol)?.consistent())
}

/// Coefficients of `log(exp(−tX) exp(t ρ(g) X ρ(g)^{-1}))`, the conjugation curve.
fn conjugation_series<S: Scalar>(rho: &Representation<S>, x: &[S], order: usize) -> Vec<CocycleVector<S>> {
    let n = rho.n();
    let xm = sl_from_coords(x, n);
    let mut neg = vec![Matrix::zeros(n, n); order + 1];
    if order >= 1 {
        neg[1] = xm.scale(&-S::one());
    }
    let left = series_exp(&neg);
    let per_gen: Vec<Series<S>> = (0..rho.images().len())
        .map(|g| {
            let ad = &(rho.generator(g) * &xm) * rho.generator_inv(g);
            let mut pos = vec![Matrix::zeros(n, n); order + 1];
            if order >= 1 {
                pos[1] = ad;
            }
            let mut prod = series_mul(&left, &series_exp(&pos));
            prod[0] = &prod[0] - &Matrix::identity(n);
            series_log1p(&prod)
        })
        .collect();
    (1..=order)
        .map(|j| CocycleVector::new(per_gen.iter().map(|s| sl_coords(&s[j])).collect()))
        .collect()
}

/// Extend `u_1` order by order to `u_1, …, u_k`.
///
/// At order `j + 1` the `t^{j+1}` coefficient `ζ_{j+1}(r)` of every relator is
/// computed from the truncated series, and `Σ_i Ad ρ(∂r/∂g_i) u_{j+1}(g_i) = −ζ_{j+1}(r)`
/// is solved. An inconsistent system is an obstruction. When `u_1` is a
/// coboundary the conjugation series is returned directly.
pub fn formal_integrate<S: Scalar>(
    p: &KnotPresentation,
    rho: &Representation<S>,
    u1: &CocycleVector<S>,
    k: usize,
    tol: &Tolerance,
) -> Result<FormalOutcome<S>, DeformError> {
    let act = adjoint_action(rho)?;
    let gens = p.generator_count();
    let d = act.dim();
    if u1.values().len() != gens || u1.values().iter().any(|v| v.len() != d) || !u1.is_cocycle(p, &act) {
        return Err(DeformError::NotACocycle);
    }
    let k = k.max(1);
    if let Some(x) = coboundary_preimage(&act, gens, u1, tol)? {
        return Ok(FormalOutcome::Series(DeformationSeries {
            terms: conjugation_series(rho, &x, k),
            obstruction_norms: vec![0.0; k - 1],
            conjugating: Some(x),
        }));
    }
    let fox = fox_matrix(p, &act);
    let n = rho.n();
    let mut series = DeformationSeries {
        terms: vec![u1.clone()],
        obstruction_norms: Vec::new(),
        conjugating: None,
    };
    for j in 1..k {
        let order = j + 1;
        let (fwd, inv) = generator_series(rho, &series.terms, order);
        let mut rhs = Vec::with_capacity(fox.rows());
        let mut norm = 0.0f64;
        for r in p.relators() {
            let zeta = traceless(&word_series(r, &fwd, &inv, n, order)[order]);
            norm = norm.max(zeta.frobenius_f64());
            rhs.extend(sl_coords(&zeta).into_iter().map(|v| -v));
        }
        let solution = if fox.rows() == 0 {
            Solution::Consistent(vec![S::zero(); gens * d])
        } else {
            S::solve(&fox, &rhs, tol)?
        };
        match solution {
            Solution::Consistent(x) => {
                series.terms.push(CocycleVector::from_flat(&x, d));
                series.obstruction_norms.push(norm);
            }
            Solution::Inconsistent { residual } => {
                return Ok(FormalOutcome::Obstructed {
                    order,
                    partial: series,
                    residual,
                })
            }
        }
    }
    Ok(FormalOutcome::Series(series))
}

/// Parameters of [`newton_deform`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub t_max: f64,
    /// How many times `t` may be halved after the residual grows twice in a row.
    pub max_halvings: usize,
    /// Order of the formal series used as the starting point; `1` starts at `exp(t u_1) ρ`.
    pub start_order: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iter: 50,
            tol: 1e-10,
            t_max: 0.1,
            max_halvings: 6,
            start_order: 1,
        }
    }
}

/// Trace of a test word before and after deformation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceShift {
    pub word: String,
    pub base: [f64; 2],
    pub deformed: [f64; 2],
}

impl TraceShift {
    pub fn difference(&self) -> f64 {
        (Complex64::new(self.base[0], self.base[1]) - Complex64::new(self.deformed[0], self.deformed[1])).norm()
    }
}

/// Output of [`newton_deform`].
#[derive(Clone, Debug)]
pub struct DeformedRep<R: Real> {
    pub rep: Representation<Complex<R>>,
    /// Step actually used, after any halving.
    pub t: f64,
    pub residual: f64,
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    /// Burnside verdict; `None` when a singular value of the span lies in the indeterminate band.
    pub irreducible: Option<bool>,
    /// Dimension of the span of image words, when determinate.
    pub span_dim: Option<usize>,
    pub traces: Vec<TraceShift>,
}

impl<R: Real> DeformedRep<R> {
    pub fn max_trace_shift(&self) -> f64 {
        self.traces.iter().map(TraceShift::difference).fold(0.0, f64::max)
    }
}

/// Words whose traces are compared: generators, `μ²`, and products of pairs.
pub fn probe_words(p: &KnotPresentation) -> Vec<Word> {
    let g = p.generator_count();
    let mu = p.meridian();
    let mut out: Vec<Word> = (0..g).map(Word::generator).collect();
    out.push(Word::power(mu, 2));
    for i in 0..g {
        for j in i + 1..g {
            out.push(Word::new([(i, 1), (j, 1)]));
            out.push(Word::new([(i, 1), (j, -1)]));
            out.push(Word::new([(i, 1), (i, 1), (j, -1)]));
        }
    }
    out
}

fn relator_residual<S: Scalar>(p: &KnotPresentation, act: &MatrixAction<S>) -> f64 {
    let n = act.dim();
    p.relators()
        .iter()
        .map(|r| {
            let e = &crate::foxcalc::word_image(r, act) - &Matrix::identity(n);
            let f = e.frobenius_f64();
            f * f
        })
        .sum::<f64>()
        .sqrt()
}

/// Multiply by the scalar `c` with `c^n det = 1`, found by Newton's method from `c = 1`.
fn unimodularize<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
    let n = m.rows();
    let det = m.det()?;
    let inv_n: S = rational(1, n as i64);
    let mut c = S::one();
    for _ in 0..8 {
        let err = c.pow_i64(n as i64).expect("nonnegative power") * &det - &S::one();
        if err.to_c64().norm() == 0.0 {
            break;
        }
        c = c.clone() * &(S::one() - &(err * &inv_n));
    }
    Ok(m.scale(&c))
}

/// Row vector of `X ↦ Σ_g tr(X_g c_g^*)` in the `sl_n` coordinates of a cochain.
fn trace_form_row<S: Scalar>(c: &CocycleVector<S>, n: usize) -> Vec<S> {
    let mut row = Vec::with_capacity(c.values().len() * (n * n - 1));
    for v in c.values() {
        let m = sl_from_coords(v, n);
        let conj = |i: usize, j: usize| {
            let x = &m[(i, j)];
            x.conj().unwrap_or_else(|| x.clone())
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    row.push(conj(i, j));
                }
            }
        }
        for i in 0..n - 1 {
            row.push(conj(i, i) - &conj(i + 1, i + 1));
        }
    }
    let scale = row.iter().map(|x| x.to_c64().norm_sqr()).sum::<f64>().sqrt();
    match BigRational::from_float(1.0 / scale) {
        Some(q) if scale > 0.0 && scale.is_finite() => {
            let f = S::from_rational(&q);
            row.into_iter().map(|x| x * &f).collect()
        }
        _ => row,
    }
}

/// Relator Jacobian stacked over the trace-form constraints against `B¹` and `u_1`.
fn newton_system<S: Scalar>(
    p: &KnotPresentation,
    act: &MatrixAction<S>,
    u1: &CocycleVector<S>,
) -> Result<Matrix<S>, LinalgError> {
    let n = act.dim();
    let gens = p.generator_count();
    let images: Vec<Matrix<S>> = (0..gens)
        .map(|g| adjoint_matrix(act.generator(g), act.generator_inv(g)))
        .collect();
    let inverses: Vec<Matrix<S>> = (0..gens)
        .map(|g| adjoint_matrix(act.generator_inv(g), act.generator(g)))
        .collect();
    let ad = MatrixAction::with_inverses(images, inverses);
    let fox = fox_matrix(p, &ad);
    let mut constraints: Vec<Vec<S>> = coboundary_spanning_set(gens, &ad)
        .iter()
        .map(|c| trace_form_row(c, n))
        .collect();
    constraints.push(trace_form_row(u1, n));
    let cmat = Matrix::from_rows(constraints, gens * (n * n - 1))?;
    Matrix::vstack(&[&fox, &cmat])
}

fn trace_shifts<S: Scalar>(p: &KnotPresentation, base: &Representation<S>, new: &Representation<S>) -> Vec<TraceShift> {
    probe_words(p)
        .iter()
        .map(|w| {
            let a = base.trace_of(w).to_c64();
            let b = new.trace_of(w).to_c64();
            TraceShift {
                word: w.display(p.generators()),
                base: [a.re, a.im],
                deformed: [b.re, b.im],
            }
        })
        .collect()
}

/// Newton steps allowed past `NewtonOptions::tol`.
const MAX_POLISH: usize = 4;

/// Rank tolerance no finer than the accuracy of a point with relator residual `residual`.
///
/// The band is at most a quarter of the threshold bits, so a smaller residual never widens it.
fn accuracy_tolerance(tol: &Tolerance, precision: u32, residual: f64) -> Tolerance {
    if !residual.is_finite() {
        return *tol;
    }
    let rb = tol.rank_bits_at(precision);
    let acc = if residual <= 0.0 {
        rb
    } else {
        ((-residual.log2()).floor() as i64 - 4).clamp(8, rb as i64) as u32
    };
    Tolerance {
        rank_bits: Some(acc),
        band_bits: Some(tol.band_bits_at(precision).min(acc / 4)),
    }
}

/// Deform `ρ` in the direction `u_1` by a step `t` and project back onto the relator variety.
///
/// Starts at `exp(t u_1(g)) ρ(g)` (or at the order-`start_order` formal
/// series) and runs Gauss-Newton on `ρ ↦ (ρ(r) − I)_r` with updates
/// `ρ(g) ← exp(X_g) ρ(g)`. Updates are minimum-norm and trace-form orthogonal
/// to the current coboundaries and to `u_1`; the truncation rank is fixed
/// from the system at the base point. Determinants are reset to 1 after
/// every step. If the residual grows twice in a row, `t` is halved and the
/// run restarts.
pub fn newton_deform<R: Real>(
    p: &KnotPresentation,
    rho: &Representation<Complex<R>>,
    u1: &CocycleVector<Complex<R>>,
    t: f64,
    opts: &NewtonOptions,
    tol: &Tolerance,
) -> Result<DeformedRep<R>, DeformError> {
    if !(0.0..=opts.t_max).contains(&t) || !t.is_finite() {
        return Err(DeformError::InvalidStep { t, t_max: opts.t_max });
    }
    let n = rho.n();
    let gens = p.generator_count();
    let d = n * n - 1;
    if u1.values().len() != gens || u1.values().iter().any(|v| v.len() != d) {
        return Err(DeformError::NotACocycle);
    }
    let finish = |images: Vec<Matrix<Complex<R>>>, t: f64, residual: f64, iterations: usize, history: Vec<f64>| {
        let rep = Representation::with_tolerance(p, images, Provenance::Deformed, opts.tol.max(residual * 2.0))?;
        let irr = match irreducibility_test(&rep, &accuracy_tolerance(tol, working_precision(rep.image(0)), residual)) {
            Ok(irr) => Some(irr),
            Err(LinalgError::Indeterminate { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let traces = trace_shifts(p, rho, &rep);
        Ok::<_, DeformError>(DeformedRep {
            rep,
            t,
            residual,
            iterations,
            residual_history: history,
            irreducible: irr.as_ref().map(|i| i.irreducible),
            span_dim: irr.as_ref().map(|i| i.span_dim),
            traces,
        })
    };
    if t == 0.0 {
        return finish(rho.images().to_vec(), 0.0, rho.residual(), 0, vec![rho.residual()]);
    }
    let base_act = MatrixAction::with_inverses(
        rho.images().to_vec(),
        (0..gens).map(|g| rho.generator_inv(g).clone()).collect(),
    );
    let base_system = newton_system(p, &base_act, u1)?;
    let keep = numeric_rank(&base_system, tol)?;
    let bits = working_precision(&base_system);
    let polish_floor = 2f64.powi(-((bits / 2) as i32));
    let formal = if opts.start_order > 1 {
        Some(formal_integrate(p, rho, u1, opts.start_order, tol)?)
    } else {
        None
    };

    let mut step = t;
    let mut last_history = Vec::new();
    for _attempt in 0..=opts.max_halvings {
        let tt = Complex::new(R::from_f64(step).at_precision(bits), R::zero());
        let mut images: Vec<Matrix<Complex<R>>> = match &formal {
            Some(f) => f.series().images_at(rho, &tt, bits),
            None => (0..gens)
                .map(|g| &expm(&sl_from_coords(u1.value(g), n).scale(&tt), bits) * rho.generator(g))
                .collect(),
        };
        let mut history = Vec::new();
        let mut increases = 0;
        let mut diverged = false;
        let mut best: Option<(Vec<Matrix<Complex<R>>>, f64, usize)> = None;
        for iter in 0..=opts.max_iter {
            let inverses = images.iter().map(Matrix::inverse).collect::<Result<Vec<_>, _>>()?;
            let act = MatrixAction::with_inverses(images.clone(), inverses);
            let res = relator_residual(p, &act);
            if let Some(&prev) = history.last() {
                if res > prev {
                    increases += 1;
                } else {
                    increases = 0;
                }
            }
            history.push(res);
            if res < opts.tol {
                // Polish towards working precision while convergence stays quadratic.
                let improving = best.as_ref().map_or(true, |b| res < b.1 / 16.0);
                if best.as_ref().map_or(true, |b| res < b.1) {
                    best = Some((images.clone(), res, iter));
                }
                let polished = best.as_ref().map_or(0, |b| iter - b.2);
                if res <= polish_floor || !improving || polished >= MAX_POLISH || iter == opts.max_iter {
                    let (images, res, iter) = best.take().expect("set above");
                    return finish(images, step, res, iter, history);
                }
            } else if let Some((images, res, iter)) = best.take() {
                return finish(images, step, res, iter, history);
            }
            if increases >= 2 || !res.is_finite() {
                diverged = true;
                break;
            }
            if iter == opts.max_iter {
                break;
            }
            let system = newton_system(p, &act, u1)?;
            let mut rhs = Vec::with_capacity(system.rows());
            for r in p.relators() {
                let rinv = crate::foxcalc::word_image(&r.inverse(), &act);
                let y = traceless(&(&rinv - &Matrix::identity(n)));
                rhs.extend(sl_coords(&y));
            }
            rhs.resize(system.rows(), Complex::new(R::zero(), R::zero()));
            let x = min_norm_solve(&system, &rhs, keep)?;
            let flat = CocycleVector::from_flat(&x, d);
            images = (0..gens)
                .map(|g| unimodularize(&(&expm(&sl_from_coords(flat.value(g), n), bits) * &images[g])))
                .collect::<Result<_, _>>()?;
        }
        last_history = history;
        if !diverged {
            break;
        }
        step /= 2.0;
    }
    Err(DeformError::NoConvergence {
        t: step,
        history: last_history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::KnotTable;
    use crate::poly::Poly;
    use crate::reps::{metabelian_representation, symmetric_power};
    use crate::scalar::{field_from_root, BigComplex, FieldElement};

    fn golden() -> FieldElement {
        field_from_root(&Poly::from_ints(&[-1, -1, 1]), Complex64::new(1.618, 0.0)).unwrap().1
    }

    #[test]
    fn accuracy_band_shrinks_with_the_residual() {
        let tol = Tolerance::default();
        let mut last = 0;
        for e in [10, 20, 40, 59, 60, 68, 80, 120] {
            let t = accuracy_tolerance(&tol, 128, 2f64.powi(-e));
            let (rank, band) = (t.rank_bits.unwrap(), t.band_bits.unwrap());
            assert!(rank <= 64 && band <= rank / 4);
            assert!(rank - band >= last, "band edge moved up at 2^-{e}");
            last = rank - band;
        }
        assert_eq!(accuracy_tolerance(&tol, 128, 1e-40), accuracy_tolerance(&tol, 128, 0.0));
    }

    fn figure_eight(n: usize) -> (KnotPresentation, Representation<FieldElement>) {
        let p = KnotTable::bundled().get("4_1").unwrap().presentation().unwrap();
        let tol = Tolerance::default();
        let rho2 = metabelian_representation(&p, &golden(), &tol).unwrap();
        let rho = if n == 2 { rho2 } else { symmetric_power(&p, &rho2, n).unwrap() };
        (p, rho)
    }

    #[test]
    fn tangent_dimensions_figure_eight() {
        let (p, rho) = figure_eight(2);
        let ts = tangent_cocycles(&p, &rho, &Tolerance::default()).unwrap();
        assert_eq!((ts.z1.len(), ts.b1.len(), ts.complement.len()), (4, 3, 1));
    }

    #[test]
    fn trivial_representation_tangent() {
        let p = KnotTable::bundled().get("3_1").unwrap().presentation().unwrap();
        let id = vec![Matrix::<BigRational>::identity(2); p.generator_count()];
        let rho = Representation::new(&p, id, Provenance::User).unwrap();
        let ts = tangent_cocycles(&p, &rho, &Tolerance::default()).unwrap();
        assert_eq!((ts.z1.len(), ts.b1.len()), (3, 0));
    }

    #[test]
    fn formal_series_solves_to_order_four() {
        let (p, rho) = figure_eight(3);
        let tol = Tolerance::default();
        let ts = tangent_cocycles(&p, &rho, &tol).unwrap();
        let out = formal_integrate(&p, &rho, &ts.complement[0], 4, &tol).unwrap();
        assert_eq!(out.obstructed_at(), None);
        let s = out.series();
        assert_eq!(s.order(), 4);
        for j in 1..=4 {
            let (fwd, inv) = generator_series(&rho, &s.terms[..j], j);
            for r in p.relators() {
                let w = word_series(r, &fwd, &inv, 3, j);
                assert!(w[0].is_identity());
                assert!(w[1..].iter().all(Matrix::is_zero_matrix), "order {j}");
            }
        }
    }

    #[test]
    fn coboundary_series_is_conjugation() {
        let (p, rho) = figure_eight(2);
        let tol = Tolerance::default();
        let ts = tangent_cocycles(&p, &rho, &tol).unwrap();
        let out = formal_integrate(&p, &rho, &ts.b1[0], 3, &tol).unwrap();
        let s = out.series();
        assert!(s.conjugating.is_some());
        let (fwd, inv) = generator_series(&rho, &s.terms, 3);
        for r in p.relators() {
            assert!(word_series(r, &fwd, &inv, 2, 3)[1..].iter().all(Matrix::is_zero_matrix));
        }
    }

    #[test]
    fn zero_direction_gives_zero_series() {
        let (p, rho) = figure_eight(2);
        let zero = CocycleVector::zero(p.generator_count(), 3);
        let out = formal_integrate(&p, &rho, &zero, 3, &Tolerance::default()).unwrap();
        assert!(out.series().terms.iter().all(|c| c.flat().iter().all(|x| x.is_zero_at(1.0))));
    }

    #[test]
    fn newton_zero_step_is_identity() {
        let (p, rho) = figure_eight(2);
        let emb = golden().field().unwrap().embedding(128);
        let rn = rho.map(&p, |x| emb.embed(x), 1e-20).unwrap();
        let ts = tangent_cocycles(&p, &rho, &Tolerance::default()).unwrap();
        let u = ts.complement[0].map(|x| emb.embed(x));
        let out = newton_deform(&p, &rn, &u, 0.0, &NewtonOptions::default(), &Tolerance::default()).unwrap();
        assert_eq!(out.rep.images(), rn.images());
        let _: &Representation<BigComplex> = &out.rep;
    }
}
