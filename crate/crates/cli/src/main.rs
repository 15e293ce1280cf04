//! `knotrep`: metabelian representations of knot groups, their twisted
//! cohomology, and numerical deformations into irreducible ones.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotrep::alexander::alexander_polynomial;
use knotrep::cohomology::{cochain_dims, verify_ladder, verify_main_theorem};
use knotrep::deform::{newton_deform, tangent_cocycles, NewtonOptions};
use knotrep::knots::{parse_knot_input, wirtinger_presentation, InputFormat, KnotPresentation, KnotTable, TABLE_ENV};
use knotrep::lambda::{parse_lambda, LambdaExpr};
use knotrep::linalg::Tolerance;
use knotrep::poly::Poly;
use knotrep::reps::{
    burde_derham, diagonal_rep, metabelian_representation, module_action, normalized_cocycle, symmetric_power,
    CocycleVector, ModuleSpec, Representation,
};
use knotrep::scalar::{Backend, BigComplex, BigFloat, FieldElement, FieldSpec, Scalar, DEFAULT_PRECISION};
use knotrep::suite::{paper_suite, SuiteOptions};

use report::{envelope, render_matrix, render_text, Failure, Outcome, Render, Status};

#[derive(Parser, Debug)]
#[command(name = "knotrep", version, about = "Metabelian SL(n) representations of knot groups and their deformations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Knot table JSON file [default: the bundled table].
    #[arg(long, global = true, value_name = "PATH", env = TABLE_ENV)]
    table: Option<PathBuf>,
    /// Scalar backend. The exact backend needs a symbolic lambda.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Working precision of the numeric backend and of deformations, in bits.
    #[arg(long, global = true, value_name = "BITS", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Relative rank threshold 2^-BITS [default: precision/2].
    #[arg(long, global = true, value_name = "BITS")]
    rank_bits: Option<u32>,
    /// Width of the indeterminate band around the rank threshold, in bits [default: precision/4].
    #[arg(long, global = true, value_name = "BITS")]
    band_bits: Option<u32>,
    /// Worker threads for paper-suite.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    jobs: usize,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Numeric,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Numeric => Backend::Numeric,
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct KnotArgs {
    /// Knot table name or alias, e.g. 4_1.
    #[arg(long)]
    knot: Option<String>,
    /// Braid word, e.g. "1 1 1" or "[1,-2,1,-2]".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Planar diagram code, e.g. "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]".
    #[arg(long)]
    pd: Option<String>,
    /// Group presentation, e.g. "<S,T | S T S T^-1 S^-1 T^-1>"; generator 0 is the meridian.
    #[arg(long)]
    presentation: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized Alexander polynomial.
    Alex {
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// Generator images of the metabelian representation r_n(rho_lambda^z).
    Rep {
        #[command(flatten)]
        knot: KnotArgs,
        /// Lambda: root(POLY, HINT) or a decimal / a+bi literal.
        #[arg(long)]
        lambda: String,
        /// Dimension n.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Cocycle in C_{lambda^2}: "auto" for the normalized generator, or one comma-separated value per generator
        /// (polynomials in the field generator x for the exact backend).
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        cocycle: String,
    },
    /// Twisted cohomology dimensions in one module.
    Cohomology {
        #[command(flatten)]
        knot: KnotArgs,
        /// Lambda, required for the sl and R modules.
        #[arg(long)]
        lambda: Option<String>,
        /// sl:N (adjoint of r_N rho), R:M (degree-M polynomials) or C:ALPHA (scalar module).
        #[arg(long)]
        module: String,
    },
    /// Hypotheses and the sl_n dimension certificate.
    Verify {
        #[command(flatten)]
        knot: KnotArgs,
        /// Lambda: root(POLY, HINT), or a numeric literal with the numeric backend.
        #[arg(long)]
        lambda: String,
        /// Dimension n of r_n(rho).
        #[arg(long)]
        n: usize,
        /// Also compute H^1(R_2k) for k < n.
        #[arg(long)]
        ladder: bool,
    },
    /// Newton deformation of r_n(rho) along a non-coboundary tangent direction.
    Deform {
        #[command(flatten)]
        knot: KnotArgs,
        /// Lambda: root(POLY, HINT); the base point is computed exactly.
        #[arg(long)]
        lambda: String,
        /// Dimension n of r_n(rho).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Step size t.
        #[arg(long)]
        t: f64,
        /// Order of the formal series used as the Newton starting point.
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Index of the tangent direction among the chosen complement of B^1.
        #[arg(long, default_value_t = 0)]
        direction: usize,
        /// Newton iteration cap.
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        /// Target relator residual.
        #[arg(long, default_value_t = 1e-10)]
        residual: f64,
    },
    /// Replay every reference number; nonzero exit on any mismatch.
    PaperSuite {
        /// Skip the Newton deformation check.
        #[arg(long)]
        no_deform: bool,
    },
    /// List the knot table with computed Alexander polynomials.
    Table,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Alex { .. } => "alex",
            Command::Rep { .. } => "rep",
            Command::Cohomology { .. } => "cohomology",
            Command::Verify { .. } => "verify",
            Command::Deform { .. } => "deform",
            Command::PaperSuite { .. } => "paper-suite",
            Command::Table => "table",
        }
    }
}

struct Ctx {
    global: Global,
    tol: Tolerance,
}

impl Ctx {
    fn backend(&self) -> Backend {
        self.global.backend.into()
    }

    fn digits(&self) -> usize {
        ((self.global.precision as f64) * std::f64::consts::LOG10_2).ceil().max(17.0) as usize
    }

    fn table(&self) -> Result<KnotTable, Failure> {
        Ok(KnotTable::resolve(self.global.table.as_deref())?)
    }

    fn knot(&self, k: &KnotArgs) -> Result<(KnotPresentation, Value), Failure> {
        let (text, format, label) = if let Some(s) = &k.knot {
            (s, InputFormat::Name, "knot")
        } else if let Some(s) = &k.braid {
            (s, InputFormat::Braid, "braid")
        } else if let Some(s) = &k.pd {
            (s, InputFormat::Pd, "pd")
        } else if let Some(s) = &k.presentation {
            (s, InputFormat::Presentation, "presentation")
        } else {
            return Err(Failure::usage("one of --knot, --braid, --pd, --presentation is required"));
        };
        let input = parse_knot_input(text, format)?;
        let table = if format == InputFormat::Name {
            self.table()?
        } else {
            KnotTable { knots: Vec::new() }
        };
        let p = wirtinger_presentation(&input, &table)?;
        Ok((p, json!({ label: text })))
    }

    fn lambda(&self, text: &str) -> Result<Lambda, Failure> {
        let expr = parse_lambda(text)?;
        match self.backend() {
            Backend::Exact => {
                let (field, value) = expr.to_exact()?;
                Ok(Lambda::Exact { field, value, expr })
            }
            Backend::Numeric => Ok(Lambda::Numeric(expr.to_numeric(self.global.precision)?)),
        }
    }

    fn backend_json(&self) -> Value {
        json!({
            "backend": self.backend(),
            "precision": self.global.precision,
            "rank_bits": self.tol.rank_bits_at(self.global.precision),
            "band_bits": self.tol.band_bits_at(self.global.precision),
        })
    }
}

enum Lambda {
    Exact {
        field: Arc<FieldSpec>,
        value: FieldElement,
        expr: LambdaExpr,
    },
    Numeric(BigComplex),
}

fn field_json(field: &FieldSpec, expr: &LambdaExpr) -> Value {
    let h = field.hint();
    json!({
        "modulus": field.modulus().display_var("x"),
        "generator_approx": [h.re, h.im],
        "lambda": expr.to_string(),
    })
}

fn presentation_json(p: &KnotPresentation) -> Value {
    json!({
        "generators": p.generators(),
        "relators": p.display_relators(),
        "phi": p.phi(),
        "deficiency": p.deficiency(),
    })
}

fn run_alex(ctx: &Ctx, k: &KnotArgs) -> Result<(Value, Outcome), Failure> {
    let (p, inputs) = ctx.knot(k)?;
    let d = alexander_polynomial(&p)?;
    let coeffs: Vec<String> = d.coeffs().iter().map(|c| c.to_string()).collect();
    let results = json!({
        "alexander": d.to_string(),
        "low_degree": d.low(),
        "coefficients": coeffs,
        "presentation": presentation_json(&p),
    });
    Ok((inputs, Outcome::ok(results)))
}

fn parse_cocycle<S: Scalar>(text: &str, convert: impl Fn(&str) -> Result<S, Failure>) -> Result<CocycleVector<S>, Failure> {
    let values = text
        .split(',')
        .map(|s| convert(s.trim()).map(|x| vec![x]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CocycleVector::new(values))
}

fn rep_generic<S: Scalar + Render>(
    ctx: &Ctx,
    p: &KnotPresentation,
    lambda: &S,
    n: usize,
    cocycle: Option<CocycleVector<S>>,
) -> Result<Value, Failure> {
    let z = match cocycle {
        Some(z) => z,
        None => normalized_cocycle(p, &(lambda.clone() * lambda), &ctx.tol)?
            .ok_or_else(|| Failure::new("rep.not_a_root", "H^1(C_{lambda^2}) vanishes; lambda^2 is not a root of the Alexander polynomial"))?,
    };
    let rho2 = burde_derham(p, lambda, &z, &ctx.tol)?;
    let rho = if n == 2 { rho2 } else { symmetric_power(p, &rho2, n)? };
    let digits = ctx.digits();
    let images: Vec<Value> = p
        .generators()
        .iter()
        .zip(rho.images())
        .map(|(g, m)| json!({ "generator": g, "matrix": render_matrix(m, digits) }))
        .collect();
    Ok(json!({
        "n": n,
        "cocycle": z.values().iter().map(|v| v[0].render(digits)).collect::<Vec<_>>(),
        "images": images,
        "provenance": rho.provenance(),
        "relator_residual": rho.residual(),
        "presentation": presentation_json(p),
    }))
}

fn run_rep(ctx: &Ctx, k: &KnotArgs, lambda: &str, n: usize, cocycle: &str) -> Result<(Value, Outcome), Failure> {
    let (p, mut inputs) = ctx.knot(k)?;
    inputs["lambda"] = json!(lambda);
    inputs["n"] = json!(n);
    inputs["cocycle"] = json!(cocycle);
    if n < 2 {
        return Err(Failure::usage("--n must be at least 2"));
    }
    let auto = cocycle.trim() == "auto";
    let results = match ctx.lambda(lambda)? {
        Lambda::Exact { field, value, expr } => {
            let z = if auto {
                None
            } else {
                Some(parse_cocycle(cocycle, |s| {
                    let poly = Poly::parse(s, 'x').map_err(|e| Failure::new("rep.cocycle", e.to_string()))?;
                    Ok(FieldElement::from_poly(&field, &poly))
                })?)
            };
            let mut r = rep_generic(ctx, &p, &value, n, z)?;
            r["field"] = field_json(&field, &expr);
            r
        }
        Lambda::Numeric(value) => {
            let bits = ctx.global.precision;
            let z = if auto {
                None
            } else {
                Some(parse_cocycle(cocycle, |s| Ok(parse_lambda(s)?.to_numeric(bits)?))?)
            };
            rep_generic(ctx, &p, &value, n, z)?
        }
    };
    Ok((inputs, Outcome::ok(results)))
}

enum ModuleArg {
    Sl(usize),
    Poly(usize),
    Scalar(String),
}

fn parse_module(text: &str) -> Result<ModuleArg, Failure> {
    let (kind, arg) = text
        .split_once(':')
        .ok_or_else(|| Failure::usage(format!("module {text:?} is not of the form sl:N, R:M or C:ALPHA")))?;
    let int = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Failure::usage(format!("bad module size {s:?}")))
    };
    match kind.trim() {
        "sl" | "SL" => Ok(ModuleArg::Sl(int(arg)?)),
        "R" | "r" => Ok(ModuleArg::Poly(int(arg)?)),
        "C" | "c" => Ok(ModuleArg::Scalar(arg.trim().to_string())),
        other => Err(Failure::usage(format!("unknown module kind {other:?}"))),
    }
}

fn cohomology_generic<S: Scalar>(
    ctx: &Ctx,
    p: &KnotPresentation,
    lambda: Option<&S>,
    spec: ModuleSpec<S>,
) -> Result<Value, Failure> {
    let rho = match (&spec, lambda) {
        (ModuleSpec::Scalar(alpha), _) => diagonal_rep(p, alpha)?,
        (_, Some(l)) => metabelian_representation(p, l, &ctx.tol)?,
        (_, None) => return Err(Failure::usage("--lambda is required for sl and R modules")),
    };
    let act = module_action(p, &rho, &spec)?;
    let dims = cochain_dims(p, &act, &ctx.tol)?;
    let consistent = dims.is_consistent(p.deficiency());
    Ok(json!({
        "dimensions": dims,
        "assertions": { "euler_characteristic": consistent },
        "passed": consistent,
    }))
}

fn run_cohomology(ctx: &Ctx, k: &KnotArgs, lambda: Option<&str>, module: &str) -> Result<(Value, Outcome), Failure> {
    let (p, mut inputs) = ctx.knot(k)?;
    inputs["lambda"] = json!(lambda);
    inputs["module"] = json!(module);
    let m = parse_module(module)?;
    let results = match m {
        ModuleArg::Scalar(alpha) => match ctx.lambda(&alpha)? {
            Lambda::Exact { value, .. } => cohomology_generic(ctx, &p, None, ModuleSpec::Scalar(value))?,
            Lambda::Numeric(value) => cohomology_generic(ctx, &p, None, ModuleSpec::Scalar(value))?,
        },
        other => {
            let lambda = lambda.ok_or_else(|| Failure::usage("--lambda is required for sl and R modules"))?;
            macro_rules! go {
                ($v:expr) => {{
                    let spec = match other {
                        ModuleArg::Sl(n) => ModuleSpec::Adjoint(n),
                        ModuleArg::Poly(m) => ModuleSpec::Polynomial(m),
                        ModuleArg::Scalar(_) => unreachable!(),
                    };
                    cohomology_generic(ctx, &p, Some(&$v), spec)?
                }};
            }
            match ctx.lambda(lambda)? {
                Lambda::Exact { value, .. } => go!(value),
                Lambda::Numeric(value) => go!(value),
            }
        }
    };
    let status = if results["passed"] == json!(true) { Status::Ok } else { Status::Error };
    Ok((inputs, Outcome { results, status }))
}

fn verify_generic<S: Scalar>(ctx: &Ctx, p: &KnotPresentation, lambda: &S, n: usize, ladder: bool) -> Result<Outcome, Failure> {
    let r = verify_main_theorem(p, lambda, n, &ctx.tol)?;
    let mut results = json!({ "theorem": r, "passed": r.passed, "applicable": r.applicable });
    if !r.applicable {
        let why = match r.hypotheses.first_failure {
            Some(k) => format!("hypothesis failure at k = {k}"),
            None => "lambda^2 is not a simple root".to_string(),
        };
        results["advisory"] = json!({
            "reason": why,
            "first_failure": r.hypotheses.first_failure,
            "z1": r.sl.z1,
            "component_dim": r.component_dim,
            "z1_exceeds_component_dim": r.sl.z1 > r.component_dim,
        });
    }
    if ladder {
        results["ladder"] = serde_json::to_value(verify_ladder(p, lambda, n, &ctx.tol)?).expect("serializable");
    }
    let status = if !r.applicable {
        Status::HypothesisFailure
    } else if r.passed {
        Status::Ok
    } else {
        Status::Error
    };
    Ok(Outcome { results, status })
}

fn run_verify(ctx: &Ctx, k: &KnotArgs, lambda: &str, n: usize, ladder: bool) -> Result<(Value, Outcome), Failure> {
    let (p, mut inputs) = ctx.knot(k)?;
    inputs["lambda"] = json!(lambda);
    inputs["n"] = json!(n);
    let out = match ctx.lambda(lambda)? {
        Lambda::Exact { value, .. } => verify_generic(ctx, &p, &value, n, ladder)?,
        Lambda::Numeric(value) => verify_generic(ctx, &p, &value, n, ladder)?,
    };
    Ok((inputs, out))
}

struct DeformArgs {
    n: usize,
    t: f64,
    order: usize,
    direction: usize,
    max_iter: usize,
    residual: f64,
}

/// `r_n ρ_λ^z` and the chosen direction in a complement of `B¹` in `Z¹`.
fn deform_base<S: Scalar>(
    ctx: &Ctx,
    p: &KnotPresentation,
    lambda: &S,
    a: &DeformArgs,
) -> Result<(Representation<S>, CocycleVector<S>, Value), Failure> {
    let rho2 = metabelian_representation(p, lambda, &ctx.tol)?;
    let rho = symmetric_power(p, &rho2, a.n)?;
    let ts = tangent_cocycles(p, &rho, &ctx.tol)?;
    let tangent = json!({ "z1": ts.z1.len(), "b1": ts.b1.len(), "complement": ts.complement.len() });
    let u = ts.complement.get(a.direction).cloned().ok_or_else(|| {
        Failure::usage(format!(
            "direction {} out of range: the complement of B^1 has dimension {}",
            a.direction,
            ts.complement.len()
        ))
    })?;
    Ok((rho, u, tangent))
}

fn run_deform(ctx: &Ctx, k: &KnotArgs, lambda: &str, a: DeformArgs) -> Result<(Value, Outcome), Failure> {
    let (p, mut inputs) = ctx.knot(k)?;
    inputs["lambda"] = json!(lambda);
    inputs["n"] = json!(a.n);
    inputs["t"] = json!(a.t);
    inputs["order"] = json!(a.order);
    inputs["direction"] = json!(a.direction);
    if a.n < 2 {
        return Err(Failure::usage("--n must be at least 2"));
    }
    let bits = ctx.global.precision;
    let (rho, u, tangent) = match ctx.lambda(lambda)? {
        Lambda::Exact { field, value, .. } => {
            let (rho, u, tangent) = deform_base(ctx, &p, &value, &a)?;
            let emb = field.embedding(bits);
            let rho = rho.map(&p, |x| emb.embed(x), 1e-20)?;
            (rho, u.map(|x| emb.embed(x)), tangent)
        }
        Lambda::Numeric(value) => deform_base(ctx, &p, &value, &a)?,
    };
    let opts = NewtonOptions {
        max_iter: a.max_iter,
        tol: a.residual,
        start_order: a.order.max(1),
        ..NewtonOptions::default()
    };
    let out = newton_deform::<BigFloat>(&p, &rho, &u, a.t, &opts, &ctx.tol)?;
    let digits = ctx.digits();
    let images: Vec<Value> = p
        .generators()
        .iter()
        .zip(out.rep.images())
        .map(|(g, m)| json!({ "generator": g, "matrix": render_matrix(m, digits) }))
        .collect();
    let results = json!({
        "images": images,
        "t": out.t,
        "residual": out.residual,
        "converged": out.residual < a.residual,
        "iterations": out.iterations,
        "residual_history": out.residual_history,
        "irreducible": out.irreducible,
        "span_dim": out.span_dim,
        "tangent": tangent,
        "traces": out.traces,
        "max_trace_shift": out.max_trace_shift(),
    });
    Ok((inputs, Outcome::ok(results)))
}

fn run_suite(ctx: &Ctx, no_deform: bool) -> Result<(Value, Outcome), Failure> {
    let table = ctx.table()?;
    let opts = SuiteOptions {
        backend: ctx.backend(),
        precision: ctx.global.precision,
        tolerance: ctx.tol,
        jobs: ctx.global.jobs.max(1),
        timings: ctx.global.timings,
        deformation: !no_deform,
    };
    let r = paper_suite(&table, &opts);
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    let results = json!({
        "checks": r.checks,
        "total": r.checks.len(),
        "failed": failed,
        "passed": r.passed,
    });
    let status = if r.passed { Status::Ok } else { Status::Error };
    let inputs = json!({ "table": ctx.global.table.as_ref().map(|p| p.display().to_string()), "deformation": !no_deform });
    Ok((inputs, Outcome { results, status }))
}

fn run_table(ctx: &Ctx) -> Result<(Value, Outcome), Failure> {
    let table = ctx.table()?;
    let mut ok = true;
    let entries: Vec<Value> = table
        .knots
        .iter()
        .map(|e| {
            let computed = e
                .presentation()
                .map_err(Failure::from)
                .and_then(|p| Ok(alexander_polynomial(&p)?));
            let mut v = json!({
                "name": e.name,
                "aliases": e.aliases,
                "braid": e.braid,
                "pd": e.pd,
                "comment": e.comment,
            });
            match computed {
                Ok(d) => {
                    v["alexander"] = json!(d.to_string());
                    if let Some(want) = &e.alexander {
                        let want = knotrep::poly::LaurentPolynomial::from_ints(0, want);
                        let agrees = want == d;
                        ok &= agrees;
                        v["reference_agrees"] = json!(agrees);
                    }
                }
                Err(f) => {
                    ok = false;
                    v["error"] = f.to_json()["error"].clone();
                }
            }
            v
        })
        .collect();
    let inputs = json!({ "table": ctx.global.table.as_ref().map(|p| p.display().to_string()) });
    let results = json!({ "knots": entries, "passed": ok });
    let status = if ok { Status::Ok } else { Status::Error };
    Ok((inputs, Outcome { results, status }))
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<(Value, Outcome), Failure> {
    match cmd {
        Command::Alex { knot } => run_alex(ctx, knot),
        Command::Rep { knot, lambda, n, cocycle } => run_rep(ctx, knot, lambda, *n, cocycle),
        Command::Cohomology { knot, lambda, module } => run_cohomology(ctx, knot, lambda.as_deref(), module),
        Command::Verify { knot, lambda, n, ladder } => run_verify(ctx, knot, lambda, *n, *ladder),
        Command::Deform {
            knot,
            lambda,
            n,
            t,
            order,
            direction,
            max_iter,
            residual,
        } => run_deform(
            ctx,
            knot,
            lambda,
            DeformArgs {
                n: *n,
                t: *t,
                order: *order,
                direction: *direction,
                max_iter: *max_iter,
                residual: *residual,
            },
        ),
        Command::PaperSuite { no_deform } => run_suite(ctx, *no_deform),
        Command::Table => run_table(ctx),
    }
}

fn emit(ctx: &Ctx, v: &Value) -> Result<(), Failure> {
    let text = match ctx.global.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => render_text(v),
    };
    match &ctx.global.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn report_failure(format: Format, f: &Failure) {
    match format {
        Format::Json => eprintln!("{}", serde_json::to_string_pretty(&f.to_json()).expect("serializable")),
        Format::Text => eprintln!("error: {f}"),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let tol = Tolerance {
        rank_bits: cli.global.rank_bits,
        band_bits: cli.global.band_bits,
    };
    let ctx = Ctx { global: cli.global, tol };
    let start = Instant::now();
    let result = dispatch(&ctx, &cli.command).and_then(|(inputs, outcome)| {
        let seconds = ctx.global.timings.then(|| start.elapsed().as_secs_f64());
        let v = envelope(
            cli.command.name(),
            &argv[1..],
            inputs,
            ctx.backend_json(),
            outcome.results,
            seconds,
        );
        emit(&ctx, &v)?;
        Ok(outcome.status)
    });
    match result {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(f) => {
            report_failure(ctx.global.format, &f);
            ExitCode::from(Status::Error.code() as u8)
        }
    }
}
