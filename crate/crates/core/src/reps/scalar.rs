//! One-dimensional modules `C_α` and the metabelian representations they feed.

use crate::foxcalc::fox_matrix;
use crate::knots::KnotPresentation;
use crate::linalg::{Matrix, Tolerance};
use crate::scalar::Scalar;

use super::{CocycleVector, ModuleAction, ModuleKind, Provenance, RepError, Representation};

fn power<S: Scalar>(x: &S, e: i64) -> Result<S, RepError> {
    x.pow_i64(e)
        .ok_or_else(|| RepError::InvalidParam("a zero scalar cannot act invertibly".into()))
}

pub(super) fn scalar_action<S: Scalar>(p: &KnotPresentation, alpha: &S) -> Result<ModuleAction<S>, RepError> {
    let images = p
        .phi()
        .iter()
        .map(|&w| Ok(Matrix::diagonal(&[power(alpha, w)?])))
        .collect::<Result<Vec<_>, RepError>>()?;
    ModuleAction::new(ModuleKind::Scalar, images)
}

/// Cocycles of the presentation with coefficients in `C_α`.
#[derive(Clone, Debug)]
pub struct ScalarCocycles<S> {
    pub basis: Vec<CocycleVector<S>>,
    /// The coboundary of `1`, `g ↦ α^{φ(g)} − 1`.
    pub coboundary: CocycleVector<S>,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

pub fn solve_scalar_cocycles<S: Scalar>(
    p: &KnotPresentation,
    alpha: &S,
    tol: &Tolerance,
) -> Result<ScalarCocycles<S>, RepError> {
    let action = scalar_action(p, alpha)?;
    let m = fox_matrix(p, &action);
    let g = p.generator_count();
    let basis: Vec<CocycleVector<S>> = if m.rows() == 0 {
        (0..g)
            .map(|i| {
                let mut v = vec![S::zero(); g];
                v[i] = S::one();
                CocycleVector::from_flat(&v, 1)
            })
            .collect()
    } else {
        S::nullspace(&m, tol)?
            .into_iter()
            .map(|v| CocycleVector::from_flat(&v, 1))
            .collect()
    };
    let coboundary = CocycleVector::coboundary(&action, g, &[S::one()]);
    let b1 = usize::from(!Matrix::column_vector(&coboundary.flat()).is_zero_matrix());
    let z1 = basis.len();
    Ok(ScalarCocycles {
        basis,
        coboundary,
        z1,
        b1,
        h1: z1 - b1,
    })
}

fn in_span<S: Scalar>(b: &CocycleVector<S>, z: &CocycleVector<S>, tol: &Tolerance) -> Result<bool, RepError> {
    let bz = Matrix::from_columns(&[b.flat(), z.flat()], b.values().len());
    let rb = S::rank(&Matrix::from_columns(&[b.flat()], b.values().len()), tol)?;
    Ok(S::rank(&bz, tol)? == rb)
}

fn first_nonzero<S: Scalar>(v: &[S]) -> Option<&S> {
    let scale = v.iter().map(|x| x.to_c64().norm()).sum::<f64>().max(1.0);
    v.iter().find(|x| !x.is_zero_at(scale))
}

/// Representative of a nonzero class in `H¹(Γ; C_α)`, or `None` when `H¹ = 0`.
///
/// A coboundary is subtracted so that the meridian value is 0, then the
/// cocycle is scaled so that its first nonzero generator value is 1.
pub fn normalized_cocycle<S: Scalar>(
    p: &KnotPresentation,
    alpha: &S,
    tol: &Tolerance,
) -> Result<Option<CocycleVector<S>>, RepError> {
    let sc = solve_scalar_cocycles(p, alpha, tol)?;
    if sc.h1 == 0 {
        return Ok(None);
    }
    let mut chosen = None;
    for z in &sc.basis {
        let outside = if sc.b1 == 0 {
            first_nonzero(&z.flat()).is_some()
        } else {
            !in_span(&sc.coboundary, z, tol)?
        };
        if outside {
            chosen = Some(z.clone());
            break;
        }
    }
    let Some(mut z) = chosen else {
        return Ok(None);
    };
    if sc.b1 == 1 {
        let mu = p.meridian();
        let denom = sc.coboundary.value(mu)[0].clone();
        if let Some(inv) = denom.inv() {
            let x0 = z.value(mu)[0].clone() * &inv;
            z = z.add(&sc.coboundary.scale(&(-x0)));
        }
    }
    let flat = z.flat();
    let lead = first_nonzero(&flat).cloned().ok_or(RepError::NotACocycle)?;
    let inv = lead
        .inv()
        .ok_or_else(|| RepError::InvalidParam("zero cocycle".into()))?;
    let mut out = z.scale(&inv);
    // Snap the values that the normalization sets exactly.
    let scale = flat.iter().map(|x| x.to_c64().norm()).sum::<f64>().max(1.0);
    for v in out.values.iter_mut().flatten() {
        if v.is_zero_at(scale) {
            *v = S::zero();
        }
    }
    Ok(Some(out))
}

/// `ρ_λ(g) = diag(λ^{φ(g)}, λ^{-φ(g)})`.
pub fn diagonal_rep<S: Scalar>(p: &KnotPresentation, lambda: &S) -> Result<Representation<S>, RepError> {
    let images = p
        .phi()
        .iter()
        .map(|&w| Ok(Matrix::diagonal(&[power(lambda, w)?, power(lambda, -w)?])))
        .collect::<Result<Vec<_>, RepError>>()?;
    Representation::new(p, images, Provenance::Diagonal)
}

/// `ρ(g) = [[λ^{φ(g)}, z(g) λ^{-φ(g)}], [0, λ^{-φ(g)}]]` for a cocycle `z` in `C_{λ²}`.
///
/// The provenance records whether `z` is a coboundary, which happens exactly
/// when the representation is abelian.
pub fn burde_derham<S: Scalar>(
    p: &KnotPresentation,
    lambda: &S,
    z: &CocycleVector<S>,
    tol: &Tolerance,
) -> Result<Representation<S>, RepError> {
    let alpha = lambda.clone() * lambda;
    let action = scalar_action(p, &alpha)?;
    if z.values().len() != p.generator_count() || z.values().iter().any(|v| v.len() != 1) {
        return Err(RepError::Dimension("cocycle must have one scalar per generator".into()));
    }
    if !z.is_cocycle(p, &action) {
        return Err(RepError::NotACocycle);
    }
    let g = p.generator_count();
    let cob = CocycleVector::coboundary(&action, g, &[S::one()]);
    let abelian = if Matrix::column_vector(&cob.flat()).is_zero_matrix() {
        first_nonzero(&z.flat()).is_none()
    } else {
        in_span(&cob, z, tol)?
    };
    let images = p
        .phi()
        .iter()
        .zip(z.values())
        .map(|(&w, zv)| {
            let a = power(lambda, w)?;
            let d = power(lambda, -w)?;
            let b = zv[0].clone() * &d;
            Ok(Matrix::from_rows(vec![vec![a, b], vec![S::zero(), d]], 2)?)
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    Representation::new(p, images, Provenance::BurdeDeRham { abelian })
}

/// `ρ_λ^z` with `z` the normalized generator of `H¹(Γ; C_{λ²})`.
pub fn metabelian_representation<S: Scalar>(
    p: &KnotPresentation,
    lambda: &S,
    tol: &Tolerance,
) -> Result<Representation<S>, RepError> {
    let alpha = lambda.clone() * lambda;
    let z = normalized_cocycle(p, &alpha, tol)?
        .ok_or_else(|| RepError::InvalidParam("H^1(C_{lambda^2}) vanishes; lambda^2 is not a root".into()))?;
    burde_derham(p, lambda, &z, tol)
}
