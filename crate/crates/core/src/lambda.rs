//! Parameter expressions for `λ`: `root(POLY, HINT)` names an algebraic
//! number, and a decimal or `a+bi` literal names a complex number.

use std::fmt;
use std::sync::Arc;

use num_complex::{Complex, Complex64};
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::{field_from_root, BigComplex, BigFloat, FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LambdaError {
    #[error("cannot parse lambda expression {0:?}")]
    Syntax(String),
    #[error("cannot parse polynomial in root(...): {0}")]
    Poly(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the exact backend needs a symbolic lambda of the form root(POLY, HINT)")]
    NotSymbolic,
}

/// A parsed `λ`.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaExpr {
    Root { poly: Poly, hint: Complex64, text: String },
    Value { re: String, im: String },
}

impl fmt::Display for LambdaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaExpr::Root { text, .. } => f.write_str(text),
            LambdaExpr::Value { re, im } => write!(f, "{re}+{im}i"),
        }
    }
}

/// Split `a+bi`, `a-bi`, `bi`, `a` into decimal strings for the real and imaginary parts.
fn split_complex(text: &str) -> Option<(String, String)> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        s.parse::<f64>().ok()?;
        return Some((s, "0".into()));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.trim_start_matches('+').to_string(),
    };
    re.parse::<f64>().ok()?;
    im.parse::<f64>().ok()?;
    Some((re.trim_start_matches('+').to_string(), im))
}

pub fn parse_complex(text: &str) -> Option<Complex64> {
    let (re, im) = split_complex(text)?;
    Some(Complex64::new(re.parse().ok()?, im.parse().ok()?))
}

pub fn parse_lambda(text: &str) -> Result<LambdaExpr, LambdaError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("root(").and_then(|r| r.strip_suffix(')')) {
        let (poly, hint) = inner.rsplit_once(',').ok_or_else(|| LambdaError::Syntax(text.into()))?;
        let poly = Poly::parse(poly.trim(), 'x').map_err(|e| LambdaError::Poly(e.to_string()))?;
        let hint = parse_complex(hint).ok_or_else(|| LambdaError::Syntax(text.into()))?;
        return Ok(LambdaExpr::Root {
            poly,
            hint,
            text: t.to_string(),
        });
    }
    let (re, im) = split_complex(t).ok_or_else(|| LambdaError::Syntax(text.into()))?;
    Ok(LambdaExpr::Value { re, im })
}

impl LambdaExpr {
    pub fn approx(&self) -> Complex64 {
        match self {
            LambdaExpr::Root { hint, .. } => *hint,
            LambdaExpr::Value { re, im } => Complex64::new(re.parse().unwrap_or(f64::NAN), im.parse().unwrap_or(f64::NAN)),
        }
    }

    /// The number field generated by `λ`, and `λ` in it.
    pub fn to_exact(&self) -> Result<(Arc<FieldSpec>, FieldElement), LambdaError> {
        match self {
            LambdaExpr::Root { poly, hint, .. } => Ok(field_from_root(poly, *hint)?),
            LambdaExpr::Value { .. } => Err(LambdaError::NotSymbolic),
        }
    }

    /// `λ` to `bits` bits; symbolic roots are refined by Newton's method.
    pub fn to_numeric(&self, bits: u32) -> Result<BigComplex, LambdaError> {
        match self {
            LambdaExpr::Root { .. } => {
                let (field, _) = self.to_exact()?;
                Ok(field.embedding(bits).root().clone())
            }
            LambdaExpr::Value { re, im } => {
                let p = |s: &str| BigFloat::parse_decimal(s, bits).ok_or_else(|| LambdaError::Syntax(self.to_string()));
                Ok(Complex::new(p(re)?, p(im)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.866+0.5i"), Some(Complex64::new(0.866, 0.5)));
        assert_eq!(parse_complex("1.618"), Some(Complex64::new(1.618, 0.0)));
        assert_eq!(parse_complex("-0.5-0.866i"), Some(Complex64::new(-0.5, -0.866)));
        assert_eq!(parse_complex("i"), Some(Complex64::new(0.0, 1.0)));
        assert_eq!(parse_complex("-2i"), Some(Complex64::new(0.0, -2.0)));
        assert_eq!(parse_complex("1e-3+2e+1i"), Some(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("abc"), None);
    }

    #[test]
    fn root_expression() {
        let l = parse_lambda("root(x^4-x^2+1, 0.866+0.5i)").unwrap();
        let (f, lam) = l.to_exact().unwrap();
        assert_eq!(f.degree(), 4);
        let z = lam.to_c64();
        assert!((z - Complex64::new(3f64.sqrt() / 2.0, 0.5)).norm() < 1e-12);
        let n = l.to_numeric(128).unwrap();
        assert!((n.to_c64() - z).norm() < 1e-12);
    }

    #[test]
    fn decimal_is_not_symbolic() {
        let l = parse_lambda("1.618").unwrap();
        assert_eq!(l.to_exact().unwrap_err(), LambdaError::NotSymbolic);
        assert!(l.to_numeric(64).is_ok());
    }
}
