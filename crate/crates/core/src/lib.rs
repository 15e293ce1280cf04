//! Reducible metabelian representations of knot groups into `SL(n, C)`,
//! the twisted cohomology that controls their deformations, and numerical
//! deformation into irreducible representations.
//!
//! The pipeline runs from a knot description to a presentation
//! ([`knots`]), through Fox calculus ([`foxcalc`]) and the Alexander
//! polynomial ([`alexander`]), to representations and their modules
//! ([`reps`]), cohomology dimensions ([`cohomology`]) and deformations
//! ([`deform`]). All linear algebra is generic over [`scalar::Scalar`], with
//! an exact number-field backend and an arbitrary-precision complex backend.

pub mod alexander;
pub mod cohomology;
pub mod deform;
pub mod foxcalc;
pub mod knots;
pub mod lambda;
pub mod linalg;
pub mod poly;
pub mod reps;
pub mod scalar;
pub mod suite;

use num_complex::Complex64;
use num_rational::BigRational;

pub use scalar::{BigComplex, BigFloat, FieldElement, FieldSpec};

/// Exact scalars: elements of a number field `Q[x]/(m)`.
pub type Exact = FieldElement;
/// Arbitrary-precision complex scalars.
pub type Numeric = BigComplex;
/// Double-precision complex scalars.
pub type Complex = Complex64;
/// Rational scalars.
pub type Rational = BigRational;

pub type ExactMatrix = linalg::Matrix<Exact>;
pub type NumericMatrix = linalg::Matrix<Numeric>;

pub type ExactRep = reps::Representation<Exact>;
pub type NumericRep = reps::Representation<Numeric>;
pub type Complex64Rep = reps::Representation<Complex>;

pub type ExactModule = reps::ModuleAction<Exact>;
pub type NumericModule = reps::ModuleAction<Numeric>;

pub type ExactCocycle = reps::CocycleVector<Exact>;
pub type NumericCocycle = reps::CocycleVector<Numeric>;

pub type ExactHypotheses = alexander::HypothesisReport<Exact>;
pub type NumericHypotheses = alexander::HypothesisReport<Numeric>;

pub type ExactSeries = deform::DeformationSeries<Exact>;
pub type NumericSeries = deform::DeformationSeries<Numeric>;
pub type NumericDeformedRep = deform::DeformedRep<BigFloat>;
