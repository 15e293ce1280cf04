//! Representations of knot groups and the modules they define.

mod adjoint;
mod burnside;
mod scalar;
mod sympow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foxcalc::{fox_matrix, word_image, Action, MatrixAction};
use crate::knots::{KnotPresentation, Word};
use crate::linalg::{LinalgError, Matrix};
use crate::scalar::{Backend, Scalar};

pub use adjoint::{adjoint_action, adjoint_matrix, sl_basis, sl_coords, sl_from_coords, sl_label};
pub use burnside::{irreducibility_test, Irreducibility};
pub use scalar::{
    burde_derham, diagonal_rep, metabelian_representation, normalized_cocycle, solve_scalar_cocycles, ScalarCocycles,
};
pub use sympow::{clebsch_gordan_check, ladder_intertwiner, ladder_intertwines, sym_power_matrix, symmetric_power};

/// Default bound on `‖ρ(r) − I‖_F` for numeric representations.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("generator {0} image does not have determinant 1")]
    NotUnimodular(usize),
    #[error("relator {relator} evaluates to a matrix at distance {residual:e} from the identity")]
    RelatorResidual { relator: usize, residual: f64 },
    #[error("the vector is not a cocycle")]
    NotACocycle,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How a representation was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    Diagonal,
    BurdeDeRham { abelian: bool },
    SymmetricPower { n: usize },
    Deformed,
    User,
}

/// Unimodular matrices on the generators that satisfy every relator.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    action: MatrixAction<S>,
    provenance: Provenance,
    residual: f64,
}

impl<S: Scalar> Representation<S> {
    /// Certify with the default numeric tolerance.
    pub fn new(p: &KnotPresentation, images: Vec<Matrix<S>>, provenance: Provenance) -> Result<Self, RepError> {
        Self::with_tolerance(p, images, provenance, DEFAULT_RESIDUAL_TOL)
    }

    /// Exact backends require every relator to be the identity; numeric ones
    /// require `‖ρ(r) − I‖_F < tol`.
    pub fn with_tolerance(
        p: &KnotPresentation,
        images: Vec<Matrix<S>>,
        provenance: Provenance,
        tol: f64,
    ) -> Result<Self, RepError> {
        if images.len() != p.generator_count() {
            return Err(RepError::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                p.generator_count()
            )));
        }
        let n = images[0].rows();
        for (i, m) in images.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(RepError::Dimension(format!("image {i} is not {n}x{n}")));
            }
            let d = m.det()? - &S::one();
            if !unimodular_ok(&d, tol) {
                return Err(RepError::NotUnimodular(i));
            }
        }
        let rep = Representation {
            action: MatrixAction::new(images)?,
            provenance,
            residual: 0.0,
        };
        let mut worst = 0.0f64;
        for (j, r) in p.relators().iter().enumerate() {
            let e = &word_image(r, &rep) - &Matrix::identity(n);
            let ok = match S::BACKEND {
                Backend::Exact => e.is_zero_matrix(),
                Backend::Numeric => e.frobenius_f64() < tol,
            };
            let res = e.frobenius_f64();
            if !ok {
                return Err(RepError::RelatorResidual { relator: j, residual: res });
            }
            worst = worst.max(res);
        }
        Ok(Representation { residual: worst, ..rep })
    }

    pub fn n(&self) -> usize {
        self.action.dim()
    }

    pub fn images(&self) -> &[Matrix<S>] {
        self.action.images()
    }

    pub fn image(&self, g: usize) -> &Matrix<S> {
        self.action.generator(g)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Largest relator residual seen at certification.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn word(&self, w: &Word) -> Matrix<S> {
        word_image(w, self)
    }

    pub fn trace_of(&self, w: &Word) -> S {
        self.word(w).trace()
    }

    /// Image under a change of scalars, certified again at tolerance `tol`.
    pub fn map<T: Scalar>(&self, p: &KnotPresentation, f: impl Fn(&S) -> T, tol: f64) -> Result<Representation<T>, RepError> {
        let images = self.images().iter().map(|m| m.map(&f)).collect();
        Representation::with_tolerance(p, images, self.provenance, tol)
    }

    /// `g ρ g^{-1}`.
    pub fn conjugate(&self, p: &KnotPresentation, g: &Matrix<S>) -> Result<Self, RepError> {
        let gi = g.inverse()?;
        let images = self.images().iter().map(|m| &(g * m) * &gi).collect();
        Self::with_tolerance(p, images, self.provenance, DEFAULT_RESIDUAL_TOL.max(self.residual * 10.0))
    }
}

fn unimodular_ok<S: Scalar>(d: &S, tol: f64) -> bool {
    match S::BACKEND {
        Backend::Exact => d.is_zero_at(1.0),
        Backend::Numeric => d.to_c64().norm() < tol,
    }
}

impl<S: Scalar> Action<S> for Representation<S> {
    fn dim(&self) -> usize {
        self.action.dim()
    }

    fn generator(&self, g: usize) -> &Matrix<S> {
        self.action.generator(g)
    }

    fn generator_inv(&self, g: usize) -> &Matrix<S> {
        self.action.generator_inv(g)
    }
}

/// Which module of the group a [`ModuleAction`] realizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ModuleKind {
    /// `C_α`: generators act by `α^{φ(g)}`.
    Scalar,
    /// `R_m`: homogeneous polynomials of degree `m` via `r_{m+1} ∘ ρ`.
    Polynomial { m: usize },
    /// `sl_n` via `Ad ∘ r_n ∘ ρ`, or `Ad ∘ ρ` for an `n`-dimensional `ρ`.
    Adjoint { n: usize },
}

impl ModuleKind {
    pub fn label(&self) -> String {
        match self {
            ModuleKind::Scalar => "C_alpha".into(),
            ModuleKind::Polynomial { m } => format!("R_{m}"),
            ModuleKind::Adjoint { n } => format!("sl_{n}"),
        }
    }
}

/// Module request for [`module_action`].
#[derive(Clone, Debug)]
pub enum ModuleSpec<S> {
    Scalar(S),
    Polynomial(usize),
    Adjoint(usize),
}

/// Generator action matrices of a module.
#[derive(Clone, Debug)]
pub struct ModuleAction<S> {
    kind: ModuleKind,
    action: MatrixAction<S>,
}

impl<S: Scalar> ModuleAction<S> {
    pub fn new(kind: ModuleKind, images: Vec<Matrix<S>>) -> Result<Self, RepError> {
        Ok(ModuleAction {
            kind,
            action: MatrixAction::new(images)?,
        })
    }

    pub fn with_inverses(kind: ModuleKind, images: Vec<Matrix<S>>, inverses: Vec<Matrix<S>>) -> Self {
        ModuleAction {
            kind,
            action: MatrixAction::with_inverses(images, inverses),
        }
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn images(&self) -> &[Matrix<S>] {
        self.action.images()
    }
}

impl<S: Scalar> Action<S> for ModuleAction<S> {
    fn dim(&self) -> usize {
        self.action.dim()
    }

    fn generator(&self, g: usize) -> &Matrix<S> {
        self.action.generator(g)
    }

    fn generator_inv(&self, g: usize) -> &Matrix<S> {
        self.action.generator_inv(g)
    }
}

/// Module action built from a two-dimensional representation.
pub fn module_action<S: Scalar>(
    p: &KnotPresentation,
    rho: &Representation<S>,
    spec: &ModuleSpec<S>,
) -> Result<ModuleAction<S>, RepError> {
    match spec {
        ModuleSpec::Scalar(alpha) => scalar::scalar_action(p, alpha),
        ModuleSpec::Polynomial(m) => {
            require_sl2(rho)?;
            let images = rho.images().iter().map(|a| sym_power_matrix(a, m + 1)).collect();
            let inverses = (0..rho.images().len())
                .map(|g| sym_power_matrix(rho.generator_inv(g), m + 1))
                .collect();
            Ok(ModuleAction::with_inverses(ModuleKind::Polynomial { m: *m }, images, inverses))
        }
        ModuleSpec::Adjoint(n) => {
            if *n < 2 {
                return Err(RepError::InvalidParam(format!("sl_{n} needs n >= 2")));
            }
            if rho.n() == *n {
                return adjoint_action(rho);
            }
            require_sl2(rho)?;
            let images: Vec<Matrix<S>> = rho.images().iter().map(|a| sym_power_matrix(a, *n)).collect();
            let inverses: Vec<Matrix<S>> = (0..images.len())
                .map(|g| sym_power_matrix(rho.generator_inv(g), *n))
                .collect();
            let ad = images.iter().zip(&inverses).map(|(m, mi)| adjoint_matrix(m, mi)).collect();
            let ad_inv = images.iter().zip(&inverses).map(|(m, mi)| adjoint_matrix(mi, m)).collect();
            Ok(ModuleAction::with_inverses(ModuleKind::Adjoint { n: *n }, ad, ad_inv))
        }
    }
}

fn require_sl2<S: Scalar>(rho: &Representation<S>) -> Result<(), RepError> {
    if rho.n() == 2 {
        Ok(())
    } else {
        Err(RepError::InvalidParam(format!(
            "expected a 2-dimensional representation, got dimension {}",
            rho.n()
        )))
    }
}

/// Values of a 1-cocycle on the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleVector<S> {
    values: Vec<Vec<S>>,
}

impl<S: Scalar> CocycleVector<S> {
    pub fn new(values: Vec<Vec<S>>) -> Self {
        CocycleVector { values }
    }

    /// Split a flat vector `(z(g_1), …, z(g_g))` into per-generator blocks.
    pub fn from_flat(flat: &[S], dim: usize) -> Self {
        CocycleVector {
            values: flat.chunks(dim).map(<[S]>::to_vec).collect(),
        }
    }

    pub fn zero(gens: usize, dim: usize) -> Self {
        CocycleVector {
            values: vec![vec![S::zero(); dim]; gens],
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CocycleVector<T> {
        CocycleVector {
            values: self.values.iter().map(|v| v.iter().map(&f).collect()).collect(),
        }
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &[S] {
        &self.values[g]
    }

    pub fn flat(&self) -> Vec<S> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        CocycleVector {
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|x| x.clone() * c).collect())
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        CocycleVector {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() + y).collect())
                .collect(),
        }
    }

    /// Whether every relator condition `Σ_i ρ(∂r/∂g_i) z(g_i) = 0` holds.
    pub fn is_cocycle<A: Action<S> + ?Sized>(&self, p: &KnotPresentation, action: &A) -> bool {
        let m = fox_matrix(p, action);
        if m.rows() == 0 {
            return true;
        }
        match m.mul_vec(&self.flat()) {
            Ok(v) => {
                let scale = m.abs_sum().max(1.0) * self.flat().iter().map(|x| x.to_c64().norm()).sum::<f64>().max(1.0);
                v.iter().all(|x| x.is_zero_at(scale))
            }
            Err(_) => false,
        }
    }

    /// Coboundary `g ↦ g·x − x`.
    pub fn coboundary<A: Action<S> + ?Sized>(action: &A, gens: usize, x: &[S]) -> Self {
        let values = (0..gens)
            .map(|g| {
                let gx = action.generator(g).mul_vec(x).expect("vector of module dimension");
                gx.iter().zip(x).map(|(a, b)| a.clone() - b).collect()
            })
            .collect();
        CocycleVector { values }
    }
}

#[cfg(test)]
mod tests;
