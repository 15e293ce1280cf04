//! Property checks shared by the proptest target and the acceptance run.
//!
//! Each check takes plain data (small integers, letter lists) so that both
//! proptest strategies and a seeded generator can drive it.

#![allow(dead_code)]

use std::sync::Arc;

use knotrep::alexander::alexander_polynomial;
use knotrep::cohomology::{cochain_dims, CohomologySummary};
use knotrep::deform::{formal_integrate, tangent_cocycles, TangentSpace};
use knotrep::foxcalc::{fox_images, fundamental_identity_holds, word_image, MatrixAction};
use knotrep::knots::{braid_presentation, parse_presentation, KnotPresentation, KnotTable, Word};
use knotrep::linalg::{Matrix, Tolerance};
use knotrep::poly::Poly;
use knotrep::reps::{
    clebsch_gordan_check, diagonal_rep, metabelian_representation, module_action, sl_coords, sl_from_coords,
    sym_power_matrix, CocycleVector, ModuleSpec, Representation,
};
use knotrep::scalar::{field_from_root, BigComplex, BigFloat, Embedding, FieldElement, FieldSpec, Scalar};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d.max(1)))
}

/// `∏ [[1, a_i], [0, 1]] [[1, 0], [b_i, 1]]`, an element of `SL(2, ℚ)`.
pub fn sl2<S: Scalar>(params: &[(i64, i64, i64)]) -> Matrix<S> {
    let mut m = Matrix::identity(2);
    for &(a, b, d) in params {
        let upper = Matrix::from_rows(
            vec![vec![S::one(), S::from_rational(&q(a, d))], vec![S::zero(), S::one()]],
            2,
        )
        .unwrap();
        let lower = Matrix::from_rows(
            vec![vec![S::one(), S::zero()], vec![S::from_rational(&q(b, d)), S::one()]],
            2,
        )
        .unwrap();
        m = &(&m * &upper) * &lower;
    }
    m
}

/// A word on `gens` generators from `(generator, sign)` letters.
pub fn word(letters: &[(usize, bool)], gens: usize) -> Word {
    Word::new(letters.iter().map(|&(g, s)| (g % gens, if s { 1 } else { -1 })))
}

/// `Σ_i ∂w/∂g_i (g_i − 1) = w − 1` in the group ring and under a matrix evaluation.
pub fn fox_identity(w: &Word, gens: usize, mats: &[Matrix<Q>]) -> bool {
    if !fundamental_identity_holds(w, gens) {
        return false;
    }
    let act = MatrixAction::new(mats.to_vec()).unwrap();
    let d = mats[0].rows();
    let id = Matrix::identity(d);
    let lhs = fox_images(w, gens, &act)
        .iter()
        .enumerate()
        .fold(Matrix::zeros(d, d), |acc, (i, f)| &acc + &(f * &(&mats[i] - &id)));
    lhs == &word_image(w, &act) - &id
}

/// `∂(uv) = ∂u + u ∂v` evaluated on matrices, and `∂(w w⁻¹) = 0`.
pub fn fox_product_rule(u: &Word, v: &Word, gens: usize, mats: &[Matrix<Q>]) -> bool {
    let act = MatrixAction::new(mats.to_vec()).unwrap();
    let uv = u.concat(v);
    let fu = fox_images(u, gens, &act);
    let fv = fox_images(v, gens, &act);
    let fuv = fox_images(&uv, gens, &act);
    let ui = word_image(u, &act);
    let product = (0..gens).all(|i| fuv[i] == &fu[i] + &(&ui * &fv[i]));
    let d = mats[0].rows();
    let cancel = fox_images(&u.concat(&u.inverse()), gens, &act)
        .iter()
        .all(|f| *f == Matrix::zeros(d, d));
    product && cancel
}

/// `r_n(AB) = r_n(A) r_n(B)`, `r_n(I) = I` and `det r_n(A) = 1`.
pub fn sym_power_homomorphism(a: &Matrix<Q>, b: &Matrix<Q>, n: usize) -> bool {
    let ra = sym_power_matrix(a, n);
    let rb = sym_power_matrix(b, n);
    sym_power_matrix(&(a * b), n) == &ra * &rb
        && sym_power_matrix(&Matrix::<Q>::identity(2), n) == Matrix::identity(n)
        && ra.det().unwrap() == Q::one()
}

pub fn clebsch_gordan(a: &Matrix<Q>, n: usize) -> bool {
    clebsch_gordan_check(a, n)
}

pub fn knot(name: &str) -> KnotPresentation {
    KnotTable::bundled().get(name).unwrap().presentation().unwrap()
}

pub const SMALL_KNOTS: [&str; 5] = ["3_1", "4_1", "5_1", "5_2", "6_1"];

fn scalar_dims<S: Scalar>(p: &KnotPresentation, alpha: &S) -> CohomologySummary {
    let rho = diagonal_rep(p, alpha).unwrap();
    let act = module_action(p, &rho, &ModuleSpec::Scalar(alpha.clone())).unwrap();
    cochain_dims(p, &act, &Tolerance::default()).unwrap()
}

/// `h¹(C_α) ≠ 0 ⟺ Δ(α) = 0` and `h¹ = h²` for `α ≠ 1`, at a rational `α`
/// and at every root of `Δ`; `h¹(C_1) = 1`.
pub fn scalar_cohomology(name: &str, num: i64, den: i64) -> bool {
    let p = knot(name);
    let delta = alexander_polynomial(&p).unwrap();
    let alpha = q(num, den);
    if alpha.is_zero() {
        return true;
    }
    let d = scalar_dims(&p, &alpha);
    let vanishes = delta.eval(&alpha).unwrap().is_zero();
    let mut ok = if alpha.is_one() {
        d.h1 == 1
    } else {
        (d.h1 != 0) == vanishes && d.h1 == d.h2
    };
    for root in delta.poly().roots_c64() {
        let (_, a) = field_from_root(delta.poly(), root).unwrap();
        let d = scalar_dims(&p, &a);
        ok &= d.h1 != 0 && d.h1 == d.h2;
    }
    ok
}

pub fn golden() -> (Arc<FieldSpec>, FieldElement) {
    field_from_root(&Poly::from_ints(&[-1, -1, 1]), Complex64::new(1.618, 0.0)).unwrap()
}

pub fn zeta12() -> (Arc<FieldSpec>, FieldElement) {
    field_from_root(&Poly::from_ints(&[1, 0, -1, 0, 1]), Complex64::new(0.866, 0.5)).unwrap()
}

fn module_dims<S: Scalar>(p: &KnotPresentation, rho: &Representation<S>, spec: ModuleSpec<S>) -> CohomologySummary {
    let act = module_action(p, rho, &spec).unwrap();
    cochain_dims(p, &act, &Tolerance::default()).unwrap()
}

/// Dimensions in `sl_n` and `R_m` agree for `ρ` and `gρg⁻¹`.
pub fn conjugation_invariance(trefoil: bool, n: usize, params: &[(i64, i64, i64)]) -> bool {
    let (name, lambda) = if trefoil { ("3_1", zeta12().1) } else { ("4_1", golden().1) };
    let p = knot(name);
    let tol = Tolerance::default();
    let rho = metabelian_representation(&p, &lambda, &tol).unwrap();
    let g: Matrix<FieldElement> = sl2(params);
    let conj = rho.conjugate(&p, &g).unwrap();
    let specs = [ModuleSpec::Adjoint(n), ModuleSpec::Polynomial(2 * (n - 1))];
    specs
        .iter()
        .all(|s| module_dims(&p, &rho, s.clone()) == module_dims(&p, &conj, s.clone()))
}

/// Apply Markov moves to the trefoil braid `σ₁³`: `(k, s)` conjugates by
/// `σ_k^{±1}` when `k` is a current strand index, and otherwise stabilizes.
pub fn markov_trefoil(moves: &[(u8, bool)]) -> Vec<i32> {
    let mut w = vec![1, 1, 1];
    let mut strands = 2;
    for &(k, s) in moves {
        let sign = if s { 1 } else { -1 };
        let k = k as i32;
        if k >= 1 && k < strands {
            let mut c = vec![sign * k];
            c.extend(&w);
            c.push(-sign * k);
            w = c;
        } else {
            w.push(sign * strands);
            strands += 1;
        }
    }
    w
}

fn trefoil_invariants(p: &KnotPresentation) -> (String, Vec<(usize, usize, usize)>) {
    let tol = Tolerance::default();
    let delta = alexander_polynomial(p).unwrap();
    let (_, lambda) = zeta12();
    let rho = metabelian_representation(p, &lambda, &tol).unwrap();
    let dims = [ModuleSpec::Adjoint(2), ModuleSpec::Adjoint(3), ModuleSpec::Polynomial(4)]
        .into_iter()
        .map(|s| {
            let d = module_dims(p, &rho, s);
            (d.h0, d.h1, d.z1)
        })
        .collect();
    (delta.to_string(), dims)
}

/// Alexander polynomial and twisted dimensions are the same for every presentation of the trefoil.
pub fn presentation_independence(moves: &[(u8, bool)]) -> bool {
    let reference = trefoil_invariants(&knot("3_1"));
    let two = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
    let moved = braid_presentation(&markov_trefoil(moves)).unwrap();
    trefoil_invariants(&two) == reference && trefoil_invariants(&moved) == reference
}

pub fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix<Q> {
    Matrix::from_fn(rows, cols, |i, j| Q::from_integer(entries[(i * cols + j) % entries.len()].into()))
}

/// A rank-deficient integer matrix: a product of `rows × k` and `k × cols` factors.
pub fn low_rank_matrix(rows: usize, cols: usize, k: usize, entries: &[i64]) -> Matrix<Q> {
    let a = int_matrix(rows, k, entries);
    let b = int_matrix(k, cols, &entries.iter().rev().copied().collect::<Vec<_>>());
    &a * &b
}

pub fn rank_transpose(m: &Matrix<Q>) -> bool {
    let tol = Tolerance::default();
    Q::rank(m, &tol).unwrap() == Q::rank(&m.transpose(), &tol).unwrap()
}

/// Exact rational, exact field and 256-bit numeric ranks agree.
pub fn backend_agreement(m: &Matrix<Q>) -> bool {
    let tol = Tolerance::default();
    let exact = Q::rank(m, &tol).unwrap();
    let (field, _) = golden();
    let in_field = m.map(|x| FieldElement::rational(x));
    let emb = field.embedding(256);
    let numeric: Matrix<BigComplex> = in_field.map(|x| emb.embed(x));
    FieldElement::rank(&in_field, &tol).unwrap() == exact && BigComplex::rank(&numeric, &tol).unwrap() == exact
}

fn element(field: &Arc<FieldSpec>, coeffs: &[i64]) -> FieldElement {
    FieldElement::from_poly(field, &Poly::from_ints(coeffs))
}

/// Ring axioms, inverses, and the complex embedding as a ring map in `ℚ(ζ₁₂)`.
pub fn field_arithmetic(a: &[i64], b: &[i64], c: &[i64]) -> bool {
    let (field, _) = zeta12();
    let (x, y, z) = (element(&field, a), element(&field, b), element(&field, c));
    let distributive = (x.clone() + &y) * &z == x.clone() * &z + &(y.clone() * &z);
    let associative = (x.clone() * &y) * &z == x.clone() * &(y.clone() * &z);
    let commutative = x.clone() * &y == y.clone() * &x;
    let inverse = match x.inv() {
        Some(xi) => (x.clone() * &xi).is_one(),
        None => x.is_zero(),
    };
    let emb = field.embedding(128);
    let hom = {
        let lhs = emb.embed(&(x.clone() * &y + &z)).to_c64();
        let rhs = emb.embed(&x).to_c64() * emb.embed(&y).to_c64() + emb.embed(&z).to_c64();
        (lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm())
    };
    distributive && associative && commutative && inverse && hom
}

/// The order-`k` integration of `(ρ, u)` and of `(gρg⁻¹, Ad_g u)` are obstructed at the same order.
pub fn obstruction_naturality(n: usize, k: usize, params: &[(i64, i64, i64)]) -> bool {
    let p = knot("4_1");
    let tol = Tolerance::default();
    let (_, lambda) = golden();
    let rho2 = metabelian_representation(&p, &lambda, &tol).unwrap();
    let rho = knotrep::reps::symmetric_power(&p, &rho2, n).unwrap();
    let g = sym_power_matrix(&sl2::<FieldElement>(params), n);
    let gi = g.inverse().unwrap();
    let conj = rho.conjugate(&p, &g).unwrap();
    let ts = tangent_cocycles(&p, &rho, &tol).unwrap();
    ts.complement.iter().all(|u| {
        let moved = CocycleVector::new(
            u.values()
                .iter()
                .map(|v| sl_coords(&(&(&g * &sl_from_coords(v, n)) * &gi)))
                .collect(),
        );
        let a = formal_integrate(&p, &rho, u, k, &tol).unwrap();
        let b = formal_integrate(&p, &conj, &moved, k, &tol).unwrap();
        a.obstructed_at() == b.obstructed_at() && a.series().order() == b.series().order()
    })
}

pub const BITS: u32 = 256;

/// The figure-eight knot at the golden ratio, `r_n ∘ ρ` exactly and embedded at [`BITS`] bits.
pub struct Setup {
    pub p: KnotPresentation,
    pub rho: Representation<FieldElement>,
    pub numeric: Representation<BigComplex>,
    pub tangent: TangentSpace<FieldElement>,
    pub emb: Embedding,
}

pub fn figure_eight(n: usize) -> Setup {
    let p = knot("4_1");
    let (f, lambda) = golden();
    let tol = Tolerance::default();
    let rho2 = metabelian_representation(&p, &lambda, &tol).unwrap();
    let rho = if n == 2 { rho2 } else { knotrep::reps::symmetric_power(&p, &rho2, n).unwrap() };
    let emb = f.embedding(BITS);
    let numeric = rho.map(&p, |x| emb.embed(x), 1e-40).unwrap();
    let tangent = tangent_cocycles(&p, &rho, &tol).unwrap();
    Setup {
        p,
        rho,
        numeric,
        tangent,
        emb,
    }
}

impl Setup {
    pub fn embed(&self, u: &CocycleVector<FieldElement>) -> CocycleVector<BigComplex> {
        u.map(|x| self.emb.embed(x))
    }

    /// Largest relator residual of the order-`k` series through `u` at each `t`.
    pub fn series_residuals(&self, u: &CocycleVector<FieldElement>, k: usize, ts: &[f64]) -> Vec<f64> {
        let series = formal_integrate(&self.p, &self.rho, u, k, &Tolerance::default())
            .unwrap()
            .series()
            .map(|x| self.emb.embed(x));
        ts.iter()
            .map(|&t| relator_residual(&self.p, series.images_at(&self.numeric, &big(t), BITS)))
            .collect()
    }
}

pub fn big(t: f64) -> BigComplex {
    BigComplex::new(BigFloat::with_precision_f64(t, BITS), BigFloat::zero())
}

pub fn relator_residual(p: &KnotPresentation, images: Vec<Matrix<BigComplex>>) -> f64 {
    let n = images[0].rows();
    let act = MatrixAction::new(images).unwrap();
    p.relators()
        .iter()
        .map(|r| (&word_image(r, &act) - &Matrix::identity(n)).frobenius_f64())
        .fold(0.0, f64::max)
}

/// Least-squares slope of `log y` against `log t`.
pub fn loglog_slope(ts: &[f64], ys: &[f64]) -> f64 {
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ls.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
