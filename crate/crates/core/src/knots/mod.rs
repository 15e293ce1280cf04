//! Knot descriptions and the group presentations derived from them.

mod braid;
mod parse;
mod pd;
mod table;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{exact, Matrix};

pub use braid::braid_presentation;
pub use parse::{parse_braid, parse_pd, parse_presentation};
pub use pd::pd_presentation;
pub use table::{KnotTable, TableEntry, TABLE_ENV};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown knot name {0:?}")]
    UnknownName(String),
    #[error("inconsistent PD code: {0}")]
    InconsistentPd(String),
    #[error("diagram has {0} components; only knots are supported")]
    Link(usize),
    #[error("empty diagram")]
    Empty,
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("cannot read knot table: {0}")]
    Table(String),
}

/// Freely reduced word in the generators, one letter per `(index, ±1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<(usize, i8)>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            debug_assert!(e == 1 || e == -1);
            if let Some(&(h, f)) = out.last() {
                if h == g && f == -e {
                    out.pop();
                    continue;
                }
            }
            out.push((g, e));
        }
        Word(out)
    }

    /// `g^k` for any integer `k`.
    pub fn power(g: usize, k: i64) -> Self {
        let e = if k < 0 { -1 } else { 1 };
        Word((0..k.unsigned_abs()).map(|_| (g, e)).collect())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn identity() -> Self {
        Word(vec![])
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }

    /// Replace each generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut out = Word::identity();
        for &(g, e) in &self.0 {
            let w = if e > 0 { images[g].clone() } else { images[g].inverse() };
            out = out.concat(&w);
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
                if e > 0 {
                    n
                } else {
                    format!("{n}^-1")
                }
            })
            .collect();
        parts.join(" ")
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Where a presentation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationSource {
    Wirtinger,
    User,
}

/// Group presentation of a knot group with its abelianization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    phi: Vec<i64>,
    meridian: usize,
    source: PresentationSource,
}

impl KnotPresentation {
    /// Validate and assemble. `phi(meridian)` must be 1 and every relator must have weight 0.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        phi: Vec<i64>,
        meridian: usize,
        source: PresentationSource,
    ) -> Result<Self, KnotError> {
        let g = generators.len();
        if g == 0 {
            return Err(KnotError::Empty);
        }
        if phi.len() != g {
            return Err(KnotError::Invalid(format!("{} weights for {g} generators", phi.len())));
        }
        if meridian >= g {
            return Err(KnotError::GeneratorOutOfRange { index: meridian, count: g });
        }
        if phi[meridian] != 1 {
            return Err(KnotError::Invalid("the meridian must have weight 1".into()));
        }
        let p = KnotPresentation {
            generators,
            relators,
            phi,
            meridian,
            source,
        };
        for (j, r) in p.relators.iter().enumerate() {
            if p.exponent_sum(r)? != 0 {
                return Err(KnotError::Invalid(format!("relator {j} has nonzero weight")));
            }
        }
        Ok(p)
    }

    /// Presentation with weights computed from the relators.
    ///
    /// The relator exponent-sum matrix must have a one-dimensional kernel; its
    /// primitive integer generator gives the weights, signed so that the first
    /// generator of weight `±1` becomes the meridian with weight `+1`.
    pub fn from_relators(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, KnotError> {
        let g = generators.len();
        if g == 0 {
            return Err(KnotError::Empty);
        }
        for r in &relators {
            if let Some(m) = r.max_generator() {
                if m >= g {
                    return Err(KnotError::GeneratorOutOfRange { index: m, count: g });
                }
            }
        }
        let m = Matrix::from_fn(relators.len(), g, |j, i| {
            let s: i64 = relators[j]
                .letters()
                .iter()
                .filter(|&&(h, _)| h == i)
                .map(|&(_, e)| e as i64)
                .sum();
            BigRational::from_integer(s.into())
        });
        let kernel = exact::nullspace(&m);
        if kernel.len() != 1 {
            return Err(KnotError::Invalid(format!(
                "abelianization has rank {}, expected 1",
                kernel.len()
            )));
        }
        let v = &kernel[0];
        let den = v
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let ints: Vec<num_bigint::BigInt> = v
            .iter()
            .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let gcd = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        let phi: Vec<i64> = ints
            .iter()
            .map(|c| (c / &gcd).to_i64().ok_or_else(|| KnotError::Invalid("weight overflow".into())))
            .collect::<Result<_, _>>()?;
        let meridian = phi
            .iter()
            .position(|w| w.abs() == 1)
            .ok_or_else(|| KnotError::Invalid("no generator of weight ±1 to serve as meridian".into()))?;
        let sign = phi[meridian].signum();
        let phi = phi.into_iter().map(|w| w * sign).collect();
        KnotPresentation::new(generators, relators, phi, meridian, PresentationSource::User)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn meridian(&self) -> usize {
        self.meridian
    }

    pub fn source(&self) -> PresentationSource {
        self.source
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// `φ(w) = Σ exponents weighted by φ(g_i)`.
    pub fn exponent_sum(&self, w: &Word) -> Result<i64, KnotError> {
        let g = self.generators.len();
        w.letters().iter().try_fold(0i64, |acc, &(i, e)| {
            if i >= g {
                Err(KnotError::GeneratorOutOfRange { index: i, count: g })
            } else {
                Ok(acc + self.phi[i] * e as i64)
            }
        })
    }

    /// Rank of the relator exponent-sum matrix; `g − 1` for a knot group.
    pub fn abelian_rank(&self) -> usize {
        let g = self.generators.len();
        let m = Matrix::from_fn(self.relators.len(), g, |j, i| {
            let s: i64 = self.relators[j]
                .letters()
                .iter()
                .filter(|&&(h, _)| h == i)
                .map(|&(_, e)| e as i64)
                .sum();
            BigRational::from_integer(s.into())
        });
        exact::rank(&m)
    }

    pub fn display_relators(&self) -> Vec<String> {
        self.relators.iter().map(|r| r.display(&self.generators)).collect()
    }
}

impl fmt::Display for KnotPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} | {}>",
            self.generators.join(", "),
            self.display_relators().join(", ")
        )
    }
}

/// A knot given in one of the supported input formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnotInput {
    /// Signed Artin generator indices, `σ_i^{±1}` as `±i`.
    Braid(Vec<i32>),
    /// Planar diagram code, one `[a, b, c, d]` per crossing.
    Pd(Vec<[i64; 4]>),
    /// Name of a table entry.
    Name(String),
    /// Presentation text such as `<S,T | S T S T^-1 S^-1 T^-1>`.
    Presentation(String),
}

/// Input format selector for [`parse_knot_input`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Braid,
    Pd,
    Name,
    Presentation,
}

pub fn parse_knot_input(text: &str, format: InputFormat) -> Result<KnotInput, KnotError> {
    if text.trim().is_empty() {
        return Err(KnotError::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    match format {
        InputFormat::Braid => Ok(KnotInput::Braid(parse_braid(text)?)),
        InputFormat::Pd => Ok(KnotInput::Pd(parse_pd(text)?)),
        InputFormat::Name => Ok(KnotInput::Name(text.trim().to_string())),
        InputFormat::Presentation => {
            parse_presentation(text)?;
            Ok(KnotInput::Presentation(text.to_string()))
        }
    }
}

/// Presentation of the knot group: Wirtinger for diagrams, validated pass-through for text.
///
/// Diagram inputs yield one generator per arc and one relator per crossing
/// with the last relator dropped; every generator has weight 1 and generator
/// 0 is the meridian.
pub fn wirtinger_presentation(input: &KnotInput, table: &KnotTable) -> Result<KnotPresentation, KnotError> {
    match input {
        KnotInput::Braid(b) => braid_presentation(b),
        KnotInput::Pd(pd) => pd_presentation(pd),
        KnotInput::Name(name) => {
            let entry = table.get(name).ok_or_else(|| KnotError::UnknownName(name.clone()))?;
            entry.presentation()
        }
        KnotInput::Presentation(text) => parse_presentation(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::new([(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]);
        assert_eq!(w.letters(), &[(2, 1)]);
        let a = Word::new([(0, 1), (1, -1)]);
        assert!(a.concat(&a.inverse()).is_empty());
    }

    #[test]
    fn exponent_sums() {
        let p = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
        let sts = Word::new([(0, 1), (1, 1), (0, 1)]);
        assert_eq!(p.exponent_sum(&sts).unwrap(), 3);
        assert_eq!(p.exponent_sum(&p.relators()[0]).unwrap(), 0);
        assert_eq!(p.exponent_sum(&Word::new([(0, 1), (1, -1)])).unwrap(), 0);
        assert!(p.exponent_sum(&Word::generator(5)).is_err());
    }

    #[test]
    fn trefoil_braid() {
        let p = braid_presentation(&[1, 1, 1]).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.abelian_rank(), 2);
        assert!(p.phi().iter().all(|w| *w == 1) && p.deficiency() == 1);
        assert_eq!(p.meridian(), 0);
    }

    #[test]
    fn unknot_braid() {
        let p = braid_presentation(&[]).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn links_rejected() {
        assert_eq!(braid_presentation(&[1, 1]), Err(KnotError::Link(2)));
        assert!(matches!(braid_presentation(&[1, 3]), Err(KnotError::Link(_))));
    }

    #[test]
    fn presentation_passthrough() {
        let input = parse_knot_input("<S,T | S T S = T S T>", InputFormat::Presentation).unwrap();
        let p = wirtinger_presentation(&input, &KnotTable::bundled()).unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.phi(), &[1, 1]);
        assert_eq!(p.source(), PresentationSource::User);
    }

    #[test]
    fn substitution_swaps_generators() {
        let r = Word::new([(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]);
        let swapped = r.substitute(&[Word::generator(1), Word::generator(0)]);
        assert_eq!(swapped.letters()[0], (1, 1));
        assert_eq!(swapped.len(), 6);
    }
}
