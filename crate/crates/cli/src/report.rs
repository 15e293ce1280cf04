//! Report envelope, error codes and the text rendering.

use std::fmt::{self, Debug, Write as _};

use knotrep::scalar::{BigComplex, FieldElement};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "knotrep.report/1";

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    HypothesisFailure,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::HypothesisFailure => 2,
        }
    }
}

/// An error with a stable dotted code such as `knot.unknown_name`.
#[derive(Debug)]
pub struct Failure {
    pub code: String,
    pub message: String,
}

impl Failure {
    pub fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        Failure {
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("usage", message)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "error": { "code": self.code, "message": self.message },
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

fn snake(ident: &str) -> String {
    let mut out = String::new();
    for (i, c) in ident.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

/// Dotted chain of enum variant names read off the `Debug` form, e.g.
/// `Rep(NotUnimodular(0))` becomes `rep.not_unimodular`.
fn variant_chain(debug: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = debug;
    loop {
        let ident: String = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        if ident.is_empty() || !ident.starts_with(|c: char| c.is_ascii_uppercase()) {
            break;
        }
        out.push(snake(&ident));
        rest = &rest[ident.len()..];
        match rest.strip_prefix('(') {
            Some(r) => rest = r,
            None => break,
        }
    }
    out
}

pub fn coded<E: Debug + fmt::Display>(module: &str, e: E) -> Failure {
    let mut code = module.to_string();
    for v in variant_chain(&format!("{e:?}")) {
        code.push('.');
        code.push_str(&v);
    }
    Failure::new(code, e.to_string())
}

macro_rules! failure_from {
    ($($t:ty => $m:literal),* $(,)?) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                coded($m, e)
            }
        })*
    };
}

failure_from! {
    knotrep::knots::KnotError => "knot",
    knotrep::lambda::LambdaError => "lambda",
    knotrep::alexander::AlexanderError => "alexander",
    knotrep::reps::RepError => "rep",
    knotrep::cohomology::CohomologyError => "cohomology",
    knotrep::deform::DeformError => "deform",
    knotrep::linalg::LinalgError => "linalg",
    knotrep::scalar::FieldError => "field",
    std::io::Error => "io",
}

/// A finished command: results plus the exit status they imply.
pub struct Outcome {
    pub results: Value,
    pub status: Status,
}

impl Outcome {
    pub fn ok(results: Value) -> Self {
        Outcome {
            results,
            status: Status::Ok,
        }
    }
}

/// The versioned envelope. `serde_json` maps are ordered by key, so output is byte-stable.
pub fn envelope(command: &str, argv: &[String], inputs: Value, backend: Value, results: Value, seconds: Option<f64>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!({ "name": command, "argv": argv }));
    m.insert("inputs".into(), inputs);
    m.insert("backend".into(), backend);
    m.insert("results".into(), results);
    if let Some(s) = seconds {
        m.insert("timings".into(), json!({ "seconds": s }));
    }
    Value::Object(m)
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_into(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_into(out, x, indent + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}

/// Indented `key: value` rendering of a report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

/// JSON rendering of scalar entries.
pub trait Render {
    fn render(&self, digits: usize) -> Value;
}

impl Render for FieldElement {
    fn render(&self, _: usize) -> Value {
        json!(self.to_string())
    }
}

impl Render for BigComplex {
    fn render(&self, digits: usize) -> Value {
        let re = self.re.to_decimal(digits);
        let im = self.im.to_decimal(digits);
        let sep = if im.starts_with('-') { "" } else { "+" };
        json!(format!("{re}{sep}{im}i"))
    }
}

pub fn render_matrix<S: Render>(m: &knotrep::linalg::Matrix<S>, digits: usize) -> Value
where
    S: knotrep::scalar::Scalar,
{
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| x.render(digits)).collect()))
            .collect(),
    )
}
