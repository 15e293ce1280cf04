//! Fox free differential calculus.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::knots::{KnotPresentation, Word};
use crate::linalg::{LinalgError, Matrix};
use crate::poly::LaurentPolynomial;
use crate::scalar::{Backend, Scalar};

/// Element of the integral group ring of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Augmentation `ε(Σ c_w w) = Σ c_w`.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Image in `Z[t^±1]` under `g_i ↦ t^{φ(g_i)}`.
    pub fn abelianize(&self, p: &KnotPresentation) -> LaurentPolynomial {
        self.terms.iter().fold(LaurentPolynomial::default(), |acc, (w, &c)| {
            let e = p.exponent_sum(w).expect("word in the presentation's generators");
            acc + LaurentPolynomial::monomial(BigRational::from_integer(c.into()), e)
        })
    }

    /// Image under a linear action of the generators.
    pub fn evaluate<S: Scalar, A: Action<S> + ?Sized>(&self, action: &A) -> Matrix<S> {
        let mut acc = Matrix::zeros(action.dim(), action.dim());
        for (w, &c) in &self.terms {
            acc = &acc + &word_image(w, action).scale(&S::from_i64(c));
        }
        acc
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, o: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, &c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, o: &GroupRingElement) -> GroupRingElement {
        self + &(-o)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, o: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &o.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

/// Linear action of the free generators on `S^dim`.
pub trait Action<S: Scalar> {
    fn dim(&self) -> usize;
    fn generator(&self, g: usize) -> &Matrix<S>;
    fn generator_inv(&self, g: usize) -> &Matrix<S>;
}

/// Image of a word under an action.
pub fn word_image<S: Scalar, A: Action<S> + ?Sized>(w: &Word, action: &A) -> Matrix<S> {
    let mut acc = Matrix::identity(action.dim());
    for &(g, e) in w.letters() {
        let m = if e > 0 { action.generator(g) } else { action.generator_inv(g) };
        acc = &acc * m;
    }
    acc
}

/// `∂w/∂g_j` by the rules `∂(uv) = ∂u + u ∂v`, `∂g_j = 1`, `∂g_j^{-1} = -g_j^{-1}`.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &(g, e) in w.letters() {
        let next = prefix.concat(&Word::new([(g, e)]));
        if g == j {
            if e > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(next.clone(), -1);
            }
        }
        prefix = next;
    }
    out
}

/// All evaluated derivatives `(∂w/∂g_j)` for `j < gens` in one pass over `w`.
///
/// Numeric entries that cancel to below the working tolerance relative to the
/// summed terms are set to zero.
pub fn fox_images<S: Scalar, A: Action<S> + ?Sized>(w: &Word, gens: usize, action: &A) -> Vec<Matrix<S>> {
    let d = action.dim();
    let mut out = vec![Matrix::zeros(d, d); gens];
    let mut scale = vec![0.0f64; gens];
    let mut prefix = Matrix::identity(d);
    for &(g, e) in w.letters() {
        if e > 0 {
            out[g] = &out[g] + &prefix;
            scale[g] += prefix.abs_sum();
            prefix = &prefix * action.generator(g);
        } else {
            prefix = &prefix * action.generator_inv(g);
            out[g] = &out[g] - &prefix;
            scale[g] += prefix.abs_sum();
        }
    }
    if S::BACKEND == Backend::Numeric {
        for (m, s) in out.iter_mut().zip(&scale) {
            for r in 0..d {
                for c in 0..d {
                    if m[(r, c)].is_zero_at(*s) {
                        m[(r, c)] = S::zero();
                    }
                }
            }
        }
    }
    out
}

/// Block matrix `[ρ(∂r_j/∂g_i)]`, one block row per relator and one block column per generator.
///
/// Its kernel is the space of cocycles written as `(z(g_1), …, z(g_g))`.
pub fn fox_matrix<S: Scalar, A: Action<S> + ?Sized>(p: &KnotPresentation, action: &A) -> Matrix<S> {
    let d = action.dim();
    let g = p.generator_count();
    let mut m = Matrix::zeros(p.relators().len() * d, g * d);
    for (j, r) in p.relators().iter().enumerate() {
        for (i, block) in fox_images(r, g, action).iter().enumerate() {
            m.set_block(j * d, i * d, block);
        }
    }
    m
}

/// Check `Σ_i ∂w/∂g_i (g_i − 1) = w − 1` in the group ring.
pub fn fundamental_identity_holds(w: &Word, gens: usize) -> bool {
    let mut lhs = GroupRingElement::zero();
    for i in 0..gens {
        let gi = &GroupRingElement::from_word(Word::generator(i)) - &GroupRingElement::one();
        lhs = &lhs + &(&fox_derivative(w, i) * &gi);
    }
    let rhs = &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one();
    lhs == rhs
}

/// Matrices acting on `S^dim`, with inverses precomputed.
#[derive(Clone, Debug)]
pub struct MatrixAction<S> {
    images: Vec<Matrix<S>>,
    inverses: Vec<Matrix<S>>,
}

impl<S: Scalar> MatrixAction<S> {
    pub fn new(images: Vec<Matrix<S>>) -> Result<Self, LinalgError> {
        let inverses = images.iter().map(Matrix::inverse).collect::<Result<_, _>>()?;
        Ok(MatrixAction { images, inverses })
    }

    pub fn with_inverses(images: Vec<Matrix<S>>, inverses: Vec<Matrix<S>>) -> Self {
        MatrixAction { images, inverses }
    }

    pub fn images(&self) -> &[Matrix<S>] {
        &self.images
    }
}

impl<S: Scalar> Action<S> for MatrixAction<S> {
    fn dim(&self) -> usize {
        self.images.first().map_or(0, Matrix::rows)
    }

    fn generator(&self, g: usize) -> &Matrix<S> {
        &self.images[g]
    }

    fn generator_inv(&self, g: usize) -> &Matrix<S> {
        &self.inverses[g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::parse_presentation;

    #[test]
    fn derivative_of_commutator() {
        let w = Word::new([(0, 1), (1, 1), (0, -1), (1, -1)]);
        let d0 = fox_derivative(&w, 0);
        let expect = &GroupRingElement::one() - &GroupRingElement::from_word(Word::new([(0, 1), (1, 1), (0, -1)]));
        assert_eq!(d0, expect);
        assert_eq!(d0.augmentation(), 0);
        assert!(fundamental_identity_holds(&w, 2));
    }

    #[test]
    fn trefoil_abelianized() {
        let p = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
        let r = &p.relators()[0];
        let ds = fox_derivative(r, 0).abelianize(&p);
        assert_eq!(ds, LaurentPolynomial::from_ints(0, &[1, 0, 1]) - LaurentPolynomial::t_pow(1));
    }

    #[test]
    fn evaluated_derivatives_agree() {
        use num_rational::BigRational as Q;
        let w = Word::new([(0, 1), (1, -1), (0, 1), (1, 1), (1, 1), (0, -1)]);
        let a: Matrix<Q> = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let b: Matrix<Q> = Matrix::from_i64(&[&[1, 3], &[0, 1]]);
        let act = MatrixAction::new(vec![a, b]).unwrap();
        let fast = fox_images(&w, 2, &act);
        for (j, m) in fast.iter().enumerate() {
            assert_eq!(*m, fox_derivative(&w, j).evaluate(&act));
        }
    }
}
