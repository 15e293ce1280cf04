//! Irreducibility by Burnside's theorem.

use num_rational::BigRational;

use crate::foxcalc::Action;
use crate::linalg::{LinalgError, Matrix, Tolerance};
use crate::scalar::{Backend, Scalar};

use super::Representation;

/// Outcome of [`irreducibility_test`].
#[derive(Clone, Debug)]
pub struct Irreducibility<S> {
    pub irreducible: bool,
    /// Dimension of the span of the image words.
    pub span_dim: usize,
    /// Basis of a proper invariant subspace, when one was located.
    pub witness: Option<Vec<Vec<S>>>,
}

fn normalized<S: Scalar>(m: Matrix<S>) -> Matrix<S> {
    if S::BACKEND == Backend::Exact {
        return m;
    }
    let f = m.frobenius_f64();
    match BigRational::from_float(1.0 / f) {
        Some(q) if f > 0.0 && f.is_finite() => m.scale(&S::from_rational(&q)),
        _ => m,
    }
}

/// Span of the words of length at most `2n − 2` in the images and their
/// inverses; the representation is irreducible iff the span is all of `M_n`.
pub fn irreducibility_test<S: Scalar>(
    rho: &Representation<S>,
    tol: &Tolerance,
) -> Result<Irreducibility<S>, LinalgError> {
    let n = rho.n();
    let full = n * n;
    let gens = rho.images().len();
    let mut letters = Vec::with_capacity(2 * gens);
    for g in 0..gens {
        letters.push(rho.generator(g).clone());
        letters.push(rho.generator_inv(g).clone());
    }
    let mut basis: Vec<Matrix<S>> = vec![Matrix::identity(n)];
    let mut rows: Vec<Vec<S>> = vec![Matrix::<S>::identity(n).into_data()];
    let mut frontier = basis.clone();
    let max_len = (2 * n).saturating_sub(2).max(1);
    'outer: for _ in 0..max_len {
        let mut next = Vec::new();
        for f in &frontier {
            for l in &letters {
                let c = normalized(f * l);
                let mut trial = rows.clone();
                trial.push(c.data().to_vec());
                let m = Matrix::from_rows(trial, full)?;
                if S::rank(&m, tol)? > rows.len() {
                    rows.push(c.data().to_vec());
                    basis.push(c.clone());
                    next.push(c);
                    if basis.len() == full {
                        break 'outer;
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let span_dim = basis.len();
    if span_dim == full {
        return Ok(Irreducibility {
            irreducible: true,
            span_dim,
            witness: None,
        });
    }
    let mut witness = None;
    for k in 0..n {
        let mut e = vec![S::zero(); n];
        e[k] = S::one();
        let images: Vec<Vec<S>> = basis.iter().map(|a| a.mul_vec(&e)).collect::<Result<_, _>>()?;
        let w = Matrix::from_columns(&images, n);
        let piv = S::pivot_columns(&w, tol)?;
        if piv.len() < n {
            witness = Some(piv.into_iter().map(|c| images[c].clone()).collect());
            break;
        }
    }
    Ok(Irreducibility {
        irreducible: false,
        span_dim,
        witness,
    })
}
