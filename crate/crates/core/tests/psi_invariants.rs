use std::f64::consts::PI;

use quasilag::analysis::{fit_decay, Decay};
use quasilag::quasilagrange::{FourierProfile, QuasiLagrange};
use quasilag::schemes::{build_scheme, SchemeId, SchemeParams};
use quasilag::Error;

#[test]
fn psi_is_even() {
    for id in [SchemeId::TpsCardinal, SchemeId::TpsIntermediate, SchemeId::GmqImproved, SchemeId::FourierProfile] {
        let q = build_scheme(id).unwrap();
        for x in [0.3, 1.7, 6.25, 41.0] {
            let (a, b) = (q.eval_psi(x).unwrap(), q.eval_psi(-x).unwrap());
            assert!((a - b).abs() <= 4.0 * q.noise_floor(), "{id} at {x}: {a} vs {b}");
        }
    }
}

/// `(1 / pi) int_0^L psi^(xi) cos(xi x) d xi` by composite Simpson.
fn inverse_transform(q: &QuasiLagrange, x: f64, cutoff: f64, panels: usize) -> f64 {
    let h = cutoff / panels as f64;
    let f = |xi: f64| q.hat_value(xi).unwrap() * (xi * x).cos();
    let mut s = f(0.0) + f(cutoff);
    for i in 1..panels {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    s * h / 3.0 / PI
}

#[test]
fn multiquadric_psi_matches_its_transform() {
    let q = SchemeParams::new(SchemeId::GmqBasic).with_c(1.0).build().unwrap();
    // psi^ ~ exp(-c xi) makes [0, 48] ample
    for i in 0..=20 {
        let x = -5.0 + 0.5 * i as f64;
        let direct = q.eval_psi(x).unwrap();
        let oracle = inverse_transform(&q, x, 48.0, 96_000);
        assert!((direct - oracle).abs() < 1e-6, "x = {x}: {direct} vs {oracle}");
    }
}

fn lattice_sum(q: &QuasiLagrange, x: f64, k: i64, degree: i32) -> f64 {
    (-k..=k).map(|j| (j as f64).powi(degree) * q.eval_psi(x - j as f64).unwrap()).sum()
}

#[test]
fn partition_of_unity() {
    let gmq = SchemeParams::new(SchemeId::GmqImproved).with_c(0.5).build().unwrap();
    let spline = build_scheme(SchemeId::BsplineImproved).unwrap();
    for x in [0.25, 0.5, 0.75] {
        assert!((lattice_sum(&gmq, x, 300, 0) - 1.0).abs() < 1e-9, "gmq at {x}");
        assert!((lattice_sum(&spline, x, 10, 0) - 1.0).abs() < 1e-13, "spline at {x}");
        assert!((lattice_sum(&spline, x, 10, 3) - x.powi(3)).abs() < 1e-12, "spline cubic at {x}");
    }
}

#[test]
fn intermediate_scheme_has_a_kink_at_minus_pi() {
    let q = build_scheme(SchemeId::TpsIntermediate).unwrap();
    let want = 8.0 / PI.powi(3);
    match q.eval_psi_hat(-PI, 1) {
        Err(Error::NonDifferentiablePoint { left, right, .. }) => {
            assert!((left + want).abs() < 1e-12 && (right - want).abs() < 1e-12, "{left} {right}");
        }
        other => panic!("expected a kink, got {other:?}"),
    }
    let report = q.kink_report(-PI, 2).unwrap();
    assert!(!report[0].jump && report[0].left.abs() < 1e-14);
    assert!(report[1].jump);
    // psi^ is smooth at 2 pi, where the symbol has its double zero
    assert!(q.kink_report(2.0 * PI, 2).unwrap().iter().all(|k| !k.jump));
}

#[test]
fn multiquadric_far_field_is_small() {
    let q = SchemeParams::new(SchemeId::GmqBasic).with_c(1.0).build().unwrap();
    let v100 = q.eval_psi(100.0).unwrap().abs();
    let v200 = q.eval_psi(200.0).unwrap().abs();
    assert!(v100 < 1e-8, "{v100}");
    let rate = (v100 / v200).log2();
    assert!((rate - 5.0).abs() < 0.1, "{rate}");
}

#[test]
fn lowest_profile_decays_quadratically() {
    let q = QuasiLagrange::profile(FourierProfile::new(vec![0.0, 0.0, -1.0], 0).unwrap()).unwrap();
    match fit_decay(&q, 20.0, 200.0, 1801).unwrap() {
        Decay::Algebraic(fit) => assert!((fit.exponent + 2.0).abs() < 0.15, "{fit:?}"),
        d => panic!("{d:?}"),
    }
}

#[test]
fn spline_support_is_compact() {
    let q = build_scheme(SchemeId::BsplineImproved).unwrap();
    let r = q.support_radius().unwrap();
    assert_eq!(r, 3.0);
    assert_eq!(q.eval_psi(r + 0.01).unwrap(), 0.0);
    assert!(q.eval_psi(r - 0.5).unwrap() != 0.0);
}
