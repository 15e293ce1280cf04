mod common;

use common::{figure_eight, loglog_slope, BITS};
use knotrep::deform::{newton_deform, DeformError, NewtonOptions};
use knotrep::linalg::{logm_near_identity, Tolerance};
use knotrep::reps::sl_coords;
use knotrep::scalar::Scalar;

#[test]
fn newton_reaches_irreducible_points_n3() {
    let s = figure_eight(3);
    assert_eq!((s.tangent.z1.len(), s.tangent.b1.len(), s.tangent.complement.len()), (10, 8, 2));
    for u in &s.tangent.complement {
        let out = newton_deform(&s.p, &s.numeric, &s.embed(u), 1e-2, &NewtonOptions::default(), &Tolerance::default())
            .unwrap();
        assert!(out.residual < 1e-10, "residual {:e}", out.residual);
        assert_eq!(out.span_dim, Some(9));
        assert_eq!(out.irreducible, Some(true));
        assert!(out.max_trace_shift() > 1e-4, "the deformation moves characters");
    }
}

#[test]
fn coboundary_directions_preserve_traces() {
    let s = figure_eight(3);
    let opts = NewtonOptions {
        start_order: 4,
        ..Default::default()
    };
    for b in &s.tangent.b1 {
        let out = newton_deform(&s.p, &s.numeric, &s.embed(b), 1e-2, &opts, &Tolerance::default()).unwrap();
        assert!(out.residual < 1e-10);
        assert!(out.max_trace_shift() < 1e-8, "trace shift {:e}", out.max_trace_shift());
        assert_ne!(out.irreducible, Some(true));
    }
}

#[test]
fn formal_series_residual_slope() {
    let s = figure_eight(3);
    let ts = [1e-3, 1e-2, 1e-1];
    for k in [2usize, 3] {
        let res = s.series_residuals(&s.tangent.complement[0], k, &ts);
        let m = loglog_slope(&ts, &res);
        assert!(m >= k as f64 + 0.8, "order {k}: slope {m}, residuals {res:?}");
    }
}

#[test]
fn first_order_displacement_is_the_tangent_vector() {
    let s = figure_eight(2);
    let u = s.embed(&s.tangent.complement[0]);
    let err = |t: f64| {
        let out = newton_deform(&s.p, &s.numeric, &u, t, &NewtonOptions::default(), &Tolerance::default()).unwrap();
        (0..s.p.generator_count())
            .map(|g| {
                let step = &out.rep.image(g).clone() * &s.numeric.image(g).inverse().unwrap();
                let x = logm_near_identity(&step, BITS).unwrap();
                sl_coords(&x)
                    .iter()
                    .zip(u.value(g))
                    .map(|(a, b)| (a.to_c64() / t - b.to_c64()).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    };
    let (e2, e3) = (err(1e-2), err(1e-3));
    assert!(e3 < 1e-2, "first-order error {e3:e}");
    assert!(e3 < e2 / 5.0, "error does not shrink linearly: {e2:e} then {e3:e}");
}

#[test]
fn meridian_square_trace_varies_at_n2() {
    let s = figure_eight(2);
    let u = s.embed(&s.tangent.complement[0]);
    let out = newton_deform(&s.p, &s.numeric, &u, 5e-2, &NewtonOptions::default(), &Tolerance::default()).unwrap();
    let mu2 = out.traces.iter().find(|t| t.word == "x1 x1").expect("meridian square is probed");
    assert!(mu2.difference() > 1e-4, "tr rho(mu^2) stays at {:?}", mu2.deformed);
    assert_eq!(out.irreducible, Some(true));
    assert_eq!(out.span_dim, Some(4));
}

#[test]
fn step_outside_range_is_rejected() {
    let s = figure_eight(2);
    let u = s.embed(&s.tangent.complement[0]);
    let r = newton_deform(&s.p, &s.numeric, &u, 0.5, &NewtonOptions::default(), &Tolerance::default());
    assert!(matches!(r, Err(DeformError::InvalidStep { .. })));
    let r = newton_deform(&s.p, &s.numeric, &u, -1e-3, &NewtonOptions::default(), &Tolerance::default());
    assert!(matches!(r, Err(DeformError::InvalidStep { .. })));
}
