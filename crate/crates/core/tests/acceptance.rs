//! One line per acceptance criterion, each at its pinned tolerance.

mod common;

use std::io::Write;

use common::*;
use knotrep::deform::{newton_deform, NewtonOptions};
use knotrep::knots::KnotTable;
use knotrep::linalg::Tolerance;
use knotrep::scalar::Backend;
use knotrep::suite::{paper_suite, SuiteOptions, SuiteReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    criterion: u8,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn report(v: &Verdict) {
    let mark = if v.passed { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "acceptance criterion {}: {mark}: {} ({})", v.criterion, v.title, v.detail);
}

fn from_suite(report: &SuiteReport, criterion: u8, title: &'static str) -> Verdict {
    let checks: Vec<_> = report.checks.iter().filter(|c| c.criterion == criterion).collect();
    let failed: Vec<_> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} expected {} observed {}", c.id, c.expected, c.observed))
        .collect();
    Verdict {
        criterion,
        title,
        passed: !checks.is_empty() && failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn sl2_params(rng: &mut ChaCha8Rng) -> Vec<(i64, i64, i64)> {
    (0..rng.gen_range(1..3))
        .map(|_| (rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect()
}

fn letters(rng: &mut ChaCha8Rng, gens: usize, max: usize) -> Vec<(usize, bool)> {
    (0..rng.gen_range(0..max)).map(|_| (rng.gen_range(0..gens), rng.gen())).collect()
}

fn ints(rng: &mut ChaCha8Rng, lo: i64, hi: i64, len: std::ops::Range<usize>) -> Vec<i64> {
    (0..rng.gen_range(len)).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e_6f74);
    let mut runs: Vec<(&str, usize, usize)> = Vec::new();
    let mut run = |name: &'static str, cases: usize, rng: &mut ChaCha8Rng, f: &dyn Fn(&mut ChaCha8Rng) -> bool| {
        let failures = (0..cases).filter(|_| !f(rng)).count();
        runs.push((name, cases, failures));
    };
    run("fox identity", 200, &mut rng, &|r| {
        let gens = r.gen_range(1..4);
        let mats: Vec<_> = (0..gens).map(|_| sl2(&sl2_params(r))).collect();
        fox_identity(&word(&letters(r, 3, 10), gens), gens, &mats)
    });
    run("fox product rule", 100, &mut rng, &|r| {
        let mats: Vec<_> = (0..2).map(|_| sl2(&sl2_params(r))).collect();
        fox_product_rule(&word(&letters(r, 2, 8), 2), &word(&letters(r, 2, 8), 2), 2, &mats)
    });
    run("r_n functoriality and det", 200, &mut rng, &|r| {
        let n = r.gen_range(1..=8);
        sym_power_homomorphism(&sl2(&sl2_params(r)), &sl2(&sl2_params(r)), n)
    });
    run("clebsch-gordan", 200, &mut rng, &|r| {
        let n = r.gen_range(2..=6);
        clebsch_gordan(&sl2(&sl2_params(r)), n)
    });
    run("number field arithmetic", 200, &mut rng, &|r| {
        field_arithmetic(&ints(r, -5, 5, 1..5), &ints(r, -5, 5, 1..5), &ints(r, -5, 5, 1..5))
    });
    run("rank of transpose", 100, &mut rng, &|r| {
        let (rows, cols, k) = (r.gen_range(1..6), r.gen_range(1..6), r.gen_range(1..4));
        rank_transpose(&low_rank_matrix(rows, cols, k, &ints(r, -9, 9, 1..30)))
    });
    run("scalar cohomology and alexander roots", 100, &mut rng, &|r| {
        let name = SMALL_KNOTS[r.gen_range(0..SMALL_KNOTS.len())];
        scalar_cohomology(name, r.gen_range(-6..=6), r.gen_range(1..=4))
    });
    run("conjugation invariance", 32, &mut rng, &|r| {
        let (trefoil, n) = (r.gen(), r.gen_range(2..=4));
        conjugation_invariance(trefoil, n, &sl2_params(r))
    });
    run("presentation independence", 24, &mut rng, &|r| {
        let moves: Vec<_> = (0..r.gen_range(0..4)).map(|_| (r.gen_range(0..4u8), r.gen())).collect();
        presentation_independence(&moves)
    });
    let total: usize = runs.iter().map(|r| r.1).sum();
    let failed: Vec<_> = runs
        .iter()
        .filter(|r| r.2 > 0)
        .map(|r| format!("{}: {}/{} failed", r.0, r.2, r.1))
        .collect();
    Verdict {
        criterion: 6,
        title: "randomized property suite",
        passed: failed.is_empty() && total >= 1000,
        detail: if failed.is_empty() {
            format!("{total} seeded cases")
        } else {
            failed.join("; ")
        },
    }
}

fn deformation() -> Verdict {
    let s = figure_eight(3);
    let tol = Tolerance::default();
    let mut notes = Vec::new();
    let mut passed = true;
    for (i, u) in s.tangent.complement.iter().enumerate() {
        match newton_deform(&s.p, &s.numeric, &s.embed(u), 1e-2, &NewtonOptions::default(), &tol) {
            Ok(out) => {
                let ok = out.residual < 1e-10 && out.span_dim == Some(9) && out.irreducible == Some(true);
                passed &= ok;
                notes.push(format!("direction {i}: residual {:.1e}, span {:?}", out.residual, out.span_dim));
            }
            Err(e) => {
                passed = false;
                notes.push(format!("direction {i}: {e}"));
            }
        }
    }
    let ts = [1e-3, 1e-2, 1e-1];
    for k in [2usize, 3] {
        let m = loglog_slope(&ts, &s.series_residuals(&s.tangent.complement[0], k, &ts));
        passed &= m >= k as f64 + 0.8;
        notes.push(format!("order {k} slope {m:.2}"));
    }
    let opts = NewtonOptions {
        start_order: 4,
        ..Default::default()
    };
    let mut shift: f64 = 0.0;
    for b in &s.tangent.b1 {
        match newton_deform(&s.p, &s.numeric, &s.embed(b), 1e-2, &opts, &tol) {
            Ok(out) => shift = shift.max(out.max_trace_shift()),
            Err(_) => shift = f64::INFINITY,
        }
    }
    passed &= shift < 1e-8;
    notes.push(format!("coboundary trace shift {shift:.1e}"));
    Verdict {
        criterion: 8,
        title: "figure-eight deformation at n = 3",
        passed,
        detail: notes.join(", "),
    }
}

#[test]
fn acceptance_criteria() {
    let table = KnotTable::bundled();
    let exact = paper_suite(
        &table,
        &SuiteOptions {
            jobs: 4,
            deformation: false,
            ..Default::default()
        },
    );
    let numeric = paper_suite(
        &table,
        &SuiteOptions {
            backend: Backend::Numeric,
            precision: 256,
            jobs: 4,
            deformation: false,
            ..Default::default()
        },
    );
    let mut verdicts = vec![
        from_suite(&exact, 1, "alexander polynomials"),
        from_suite(&exact, 2, "trefoil sl_6 cocycles and cohomology"),
        from_suite(&exact, 3, "trefoil R_m cohomology"),
        from_suite(&exact, 4, "figure-eight sl_n dimensions"),
        from_suite(&exact, 5, "hypothesis checker"),
        properties(),
    ];
    let mut agreement = [2, 3, 4].map(|c| from_suite(&numeric, c, "numeric"));
    verdicts.push(Verdict {
        criterion: 7,
        title: "256-bit numeric backend matches exact dimensions",
        passed: agreement.iter().all(|v| v.passed),
        detail: agreement
            .iter_mut()
            .map(|v| format!("criterion {}: {}", v.criterion, std::mem::take(&mut v.detail)))
            .collect::<Vec<_>>()
            .join("; "),
    });
    verdicts.push(deformation());
    for v in &verdicts {
        report(v);
    }
    let failed: Vec<u8> = verdicts.iter().filter(|v| !v.passed).map(|v| v.criterion).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
