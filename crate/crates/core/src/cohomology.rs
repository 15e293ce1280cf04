//! Twisted cohomology of a presentation with coefficients in a module, and the
//! dimension checks built on it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alexander::{alexander_polynomial, check_hypotheses, AlexanderError, HypothesisReport};
use crate::foxcalc::{fox_matrix, Action};
use crate::knots::KnotPresentation;
use crate::linalg::{LinalgError, Matrix, Tolerance};
use crate::reps::{
    metabelian_representation, module_action, CocycleVector, ModuleAction, ModuleSpec, RepError, Representation,
};
use crate::scalar::{Backend, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Dimensions of `H⁰`, `Z¹`, `B¹`, `H¹`, `H²` for one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologySummary {
    pub module: String,
    pub dim: usize,
    pub h0: usize,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    pub h2: usize,
    pub backend: Backend,
}

impl CohomologySummary {
    /// `z1 = b1 + h1`, `b1 = dim − h0` and, for deficiency one, `h2 = z1 − dim`.
    pub fn is_consistent(&self, deficiency: i64) -> bool {
        let euler = deficiency != 1 || self.h2 + self.dim == self.z1;
        self.z1 == self.b1 + self.h1 && self.b1 + self.h0 == self.dim && euler
    }
}

/// Stacked `ρ(g_i) − I`; its kernel is `H⁰`.
fn invariants_matrix<S: Scalar, A: Action<S> + ?Sized>(gens: usize, act: &A) -> Matrix<S> {
    let d = act.dim();
    let id = Matrix::identity(d);
    let mut m = Matrix::zeros(gens * d, d);
    for g in 0..gens {
        m.set_block(g * d, 0, &(act.generator(g) - &id));
    }
    m
}

fn rank_or_zero<S: Scalar>(m: &Matrix<S>, tol: &Tolerance) -> Result<usize, LinalgError> {
    if m.rows() == 0 || m.cols() == 0 {
        Ok(0)
    } else {
        S::rank(m, tol)
    }
}

/// Cohomology dimensions for an arbitrary action, labelled `module`.
pub fn cochain_dims_for<S: Scalar, A: Action<S> + ?Sized>(
    p: &KnotPresentation,
    act: &A,
    module: &str,
    tol: &Tolerance,
) -> Result<CohomologySummary, CohomologyError> {
    let d = act.dim();
    let g = p.generator_count();
    let r = p.relators().len();
    let h0 = d - rank_or_zero(&invariants_matrix(g, act), tol)?;
    let fox_rank = rank_or_zero(&fox_matrix(p, act), tol)?;
    let z1 = g * d - fox_rank;
    let b1 = d - h0;
    Ok(CohomologySummary {
        module: module.to_string(),
        dim: d,
        h0,
        z1,
        b1,
        h1: z1 - b1,
        h2: r * d - fox_rank,
        backend: S::BACKEND,
    })
}

pub fn cochain_dims<S: Scalar>(
    p: &KnotPresentation,
    act: &ModuleAction<S>,
    tol: &Tolerance,
) -> Result<CohomologySummary, CohomologyError> {
    cochain_dims_for(p, act, &act.kind().label(), tol)
}

/// Basis of `Z¹`, one cocycle per kernel vector of the Fox matrix.
pub fn cocycle_basis<S: Scalar, A: Action<S> + ?Sized>(
    p: &KnotPresentation,
    act: &A,
    tol: &Tolerance,
) -> Result<Vec<CocycleVector<S>>, CohomologyError> {
    let d = act.dim();
    let g = p.generator_count();
    if p.relators().is_empty() || d == 0 {
        return Ok((0..g * d)
            .map(|k| {
                let mut v = vec![S::zero(); g * d];
                v[k] = S::one();
                CocycleVector::from_flat(&v, d)
            })
            .collect());
    }
    Ok(S::nullspace(&fox_matrix(p, act), tol)?
        .into_iter()
        .map(|v| CocycleVector::from_flat(&v, d))
        .collect())
}

/// Coboundaries of the standard basis vectors of the module; they span `B¹`.
pub fn coboundary_spanning_set<S: Scalar, A: Action<S> + ?Sized>(gens: usize, act: &A) -> Vec<CocycleVector<S>> {
    let d = act.dim();
    (0..d)
        .map(|k| {
            let mut x = vec![S::zero(); d];
            x[k] = S::one();
            CocycleVector::coboundary(act, gens, &x)
        })
        .collect()
}

/// Serializable view of a [`HypothesisReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisSummary {
    pub n: usize,
    pub simple_root: bool,
    pub power_conditions: BTreeMap<usize, bool>,
    pub unit_conditions: BTreeMap<usize, bool>,
    pub verdict: bool,
    pub first_failure: Option<usize>,
}

impl<S> From<&HypothesisReport<S>> for HypothesisSummary {
    fn from(r: &HypothesisReport<S>) -> Self {
        HypothesisSummary {
            n: r.n,
            simple_root: r.simple_root,
            power_conditions: r.power_conditions.clone(),
            unit_conditions: r.unit_conditions.clone(),
            verdict: r.verdict,
            first_failure: r.first_failure(),
        }
    }
}

/// `ρ_λ^z` together with the hypothesis report for `(Δ, λ, n)`.
fn base_data<S: Scalar>(
    p: &KnotPresentation,
    lambda: &S,
    n: usize,
    tol: &Tolerance,
) -> Result<(Representation<S>, HypothesisSummary), CohomologyError> {
    let delta = alexander_polynomial(p)?;
    let hyp = check_hypotheses(&delta, lambda, n)?;
    let rho = metabelian_representation(p, lambda, tol)?;
    Ok((rho, HypothesisSummary::from(&hyp)))
}

/// Comparison of `H¹(R_{2k})` with `H¹(R_2)` and of `H¹(sl_n)` with `(n−1)·H¹(R_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderReport {
    pub n: usize,
    pub hypotheses: HypothesisSummary,
    /// `m ↦ dim H¹(R_m)` for `m = 2, 4, …, 2n − 2`.
    pub h1_polynomial: BTreeMap<usize, usize>,
    pub h1_sl: usize,
    pub predicted_sl: usize,
    /// Smallest `k` with `dim H¹(R_{2k}) ≠ dim H¹(R_2)`.
    pub chain_break: Option<usize>,
    pub sl_matches: bool,
    pub passed: bool,
}

pub fn verify_ladder<S: Scalar>(
    p: &KnotPresentation,
    lambda: &S,
    n: usize,
    tol: &Tolerance,
) -> Result<LadderReport, CohomologyError> {
    let (rho, hypotheses) = base_data(p, lambda, n, tol)?;
    let mut h1_polynomial = BTreeMap::new();
    for k in 1..n {
        let act = module_action(p, &rho, &ModuleSpec::Polynomial(2 * k))?;
        h1_polynomial.insert(2 * k, cochain_dims(p, &act, tol)?.h1);
    }
    let sl = module_action(p, &rho, &ModuleSpec::Adjoint(n))?;
    let h1_sl = cochain_dims(p, &sl, tol)?.h1;
    let base = h1_polynomial.get(&2).copied().unwrap_or(0);
    let chain_break = (2..n).find(|k| h1_polynomial[&(2 * k)] != base);
    let predicted_sl = (n - 1) * base;
    let sl_matches = h1_sl == predicted_sl;
    let passed = hypotheses.verdict && chain_break.is_none() && sl_matches;
    Ok(LadderReport {
        n,
        hypotheses,
        h1_polynomial,
        h1_sl,
        predicted_sl,
        chain_break,
        sl_matches,
        passed,
    })
}

/// Dimension certificate for `ρ_{λ,n}^z` in `sl_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub n: usize,
    pub hypotheses: HypothesisSummary,
    /// Whether the hypotheses hold, so that the assertions below are claims.
    pub applicable: bool,
    pub sl: CohomologySummary,
    /// `(n + 2)(n − 1)`.
    pub component_dim: usize,
    pub h0_vanishes: bool,
    pub h1_is_n_minus_1: bool,
    /// `dim Z¹` equals the component dimension.
    pub regular: bool,
    pub passed: bool,
}

impl TheoremReport {
    /// The hypotheses hold but some dimension disagrees.
    pub fn contradicts(&self) -> bool {
        self.applicable && !self.passed
    }
}

pub fn verify_main_theorem<S: Scalar>(
    p: &KnotPresentation,
    lambda: &S,
    n: usize,
    tol: &Tolerance,
) -> Result<TheoremReport, CohomologyError> {
    let (rho, hypotheses) = base_data(p, lambda, n, tol)?;
    let act = module_action(p, &rho, &ModuleSpec::Adjoint(n))?;
    let sl = cochain_dims(p, &act, tol)?;
    let component_dim = (n + 2) * (n - 1);
    let h0_vanishes = sl.h0 == 0;
    let h1_is_n_minus_1 = sl.h1 == n - 1;
    let regular = sl.z1 == component_dim;
    let applicable = hypotheses.verdict;
    Ok(TheoremReport {
        n,
        applicable,
        passed: applicable && h0_vanishes && h1_is_n_minus_1 && regular,
        hypotheses,
        sl,
        component_dim,
        h0_vanishes,
        h1_is_n_minus_1,
        regular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{parse_presentation, KnotTable};
    use crate::poly::Poly;
    use crate::scalar::{field_from_root, FieldElement};
    use num_complex::Complex64;

    fn golden() -> FieldElement {
        field_from_root(&Poly::from_ints(&[-1, -1, 1]), Complex64::new(1.618, 0.0)).unwrap().1
    }

    fn zeta12() -> FieldElement {
        field_from_root(&Poly::from_ints(&[1, 0, -1, 0, 1]), Complex64::new(0.866, 0.5)).unwrap().1
    }

    fn presentation(name: &str) -> KnotPresentation {
        KnotTable::bundled().get(name).unwrap().presentation().unwrap()
    }

    #[test]
    fn trivial_module() {
        let tol = Tolerance::default();
        for name in ["3_1", "4_1", "5_2"] {
            let p = presentation(name);
            let act = module_action(
                &p,
                &crate::reps::diagonal_rep(&p, &FieldElement::from_i64(1)).unwrap(),
                &ModuleSpec::Scalar(FieldElement::from_i64(1)),
            )
            .unwrap();
            let s = cochain_dims(&p, &act, &tol).unwrap();
            assert_eq!((s.h0, s.h1, s.h2), (1, 1, 0), "{name}");
        }
    }

    #[test]
    fn figure_eight_small_n() {
        let p = presentation("4_1");
        let lambda = golden();
        for n in 2..=4 {
            let r = verify_main_theorem(&p, &lambda, n, &Tolerance::default()).unwrap();
            assert!(r.passed, "n = {n}: {r:?}");
            assert_eq!(r.sl.z1, n * n + n - 2);
        }
    }

    #[test]
    fn figure_eight_ladder() {
        let p = presentation("4_1");
        let r = verify_ladder(&p, &golden(), 4, &Tolerance::default()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.h1_polynomial.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(r.h1_sl, 3);
    }

    #[test]
    fn trefoil_two_generator_sl6() {
        let p = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
        let r = verify_main_theorem(&p, &zeta12(), 6, &Tolerance::default()).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.hypotheses.first_failure, Some(5));
        assert_eq!((r.sl.z1, r.sl.h1, r.sl.h0), (42, 7, 0));
    }
}
