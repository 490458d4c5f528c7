use std::f64::consts::{FRAC_PI_2, PI};

use hardyscope_core::analytic::{
    classify, estimate_b_alpha_of_map, estimate_h_of_map, hyperbolic_distance_disk,
    lp_bergman_integral, lp_hardy_integral, AnalyticMap, ClosedFormDomain, GaussLegendre, Verdict,
};
use hardyscope_core::rng;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn derivatives_match_finite_differences() {
    let mut g = rng::stream(5, 0);
    let maps = AnalyticMap::catalog();
    for _ in 0..1000 {
        let z = Complex64::from_polar(
            0.9 * rng::uniform(&mut g).sqrt(),
            2.0 * PI * rng::uniform(&mut g),
        );
        for m in &maps {
            let h = 1e-6;
            let fd = (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
            let d = m.deriv(z);
            assert!(
                (fd - d).norm() <= 1e-5 * (1.0 + d.norm()),
                "{} at {z}: {d} vs {fd}",
                m.label()
            );
        }
    }
}

#[test]
fn identity_integrals_are_half_pi() {
    let r = 1.0 - 2f64.powi(-30);
    assert!((lp_hardy_integral(&AnalyticMap::Identity, 2.0, r).unwrap() - FRAC_PI_2).abs() < 1e-3);
    assert!(
        (lp_bergman_integral(&AnalyticMap::Identity, 2.0, 0.0, r).unwrap() - FRAC_PI_2).abs()
            < 1e-3
    );
    for p in [0.3, 1.0, 4.0, 9.0] {
        assert_eq!(
            classify(&AnalyticMap::Identity, p, None).unwrap().verdict,
            Verdict::Convergent
        );
    }
}

#[test]
fn koebe_truncated_integrals() {
    let at =
        |p: f64, k: i32| lp_hardy_integral(&AnalyticMap::Koebe, p, 1.0 - 2f64.powi(-k)).unwrap();
    // p = 1/4 < h: increments shrink geometrically.
    let (a, b, d) = (at(0.25, 10), at(0.25, 20), at(0.25, 30));
    assert!((d - b).abs() < 0.1 * (b - a).abs());
    // p = 1 > h: every further layer adds at least as much as the last.
    let (a, b, d) = (at(1.0, 10), at(1.0, 20), at(1.0, 30));
    assert!(d - b >= 0.9 * (b - a) && b > a);
}

#[test]
fn catalog_verdicts() {
    assert_eq!(
        classify(&AnalyticMap::Strip, 5.0, None).unwrap().verdict,
        Verdict::Convergent
    );
    assert_eq!(
        classify(&AnalyticMap::ExpPoisson, 0.1, None)
            .unwrap()
            .verdict,
        Verdict::Divergent
    );
    assert_eq!(
        classify(&AnalyticMap::HalfPlane, 0.7, None)
            .unwrap()
            .verdict,
        Verdict::Convergent
    );
    assert_eq!(
        classify(&AnalyticMap::HalfPlane, 1.5, None)
            .unwrap()
            .verdict,
        Verdict::Divergent
    );
}

#[test]
fn transition_brackets() {
    let h = estimate_h_of_map(&AnalyticMap::Koebe, (0.1, 1.0), 12).unwrap();
    assert!(h.p_low <= 0.5 && 0.5 <= h.p_high && !h.open_above);
    let hp = estimate_h_of_map(&AnalyticMap::HalfPlane, (0.3, 2.0), 12).unwrap();
    assert!(hp.p_low <= 1.0 && 1.0 <= hp.p_high);
    let b1 = estimate_b_alpha_of_map(&AnalyticMap::Koebe, 1.0, (0.5, 3.0), 12).unwrap();
    assert!(b1.p_low <= 1.5 && 1.5 <= b1.p_high);
    let id = estimate_b_alpha_of_map(&AnalyticMap::Identity, 0.0, (0.5, 8.0), 6).unwrap();
    assert!(id.open_above && id.p_high == 8.0);
    assert!(estimate_h_of_map(&AnalyticMap::Koebe, (1.0, 0.5), 4).is_err());
}

#[test]
fn rotation_leaves_the_integral_unchanged() {
    let r = 1.0 - 2f64.powi(-12);
    let base = lp_hardy_integral(&AnalyticMap::Koebe, 0.4, r).unwrap();
    for angle in [0.3, 1.0, 2.5, -2.0] {
        let rot = AnalyticMap::Rotated {
            angle,
            inner: Box::new(AnalyticMap::Koebe),
        };
        let v = lp_hardy_integral(&rot, 0.4, r).unwrap();
        assert!(
            (v / base - 1.0).abs() < 1e-3,
            "angle {angle}: {v} vs {base}"
        );
    }
}

#[test]
fn divergence_is_upward_closed_in_p() {
    let r = 1.0 - 2f64.powi(-10);
    for m in [
        AnalyticMap::Koebe,
        AnalyticMap::HalfPlane,
        AnalyticMap::Strip,
    ] {
        for p in [0.2, 0.4, 0.8, 1.6] {
            let v = lp_hardy_integral(&m, p, r).unwrap();
            assert!(v.is_finite() && v > 0.0, "{} at p = {p}", m.label());
        }
    }
    let verdicts: Vec<Verdict> = [0.2, 0.4, 0.8, 1.6, 3.2]
        .iter()
        .map(|&p| classify(&AnalyticMap::Koebe, p, None).unwrap().verdict)
        .collect();
    let first = verdicts
        .iter()
        .position(|v| *v == Verdict::Divergent)
        .unwrap();
    assert!(verdicts[first..].iter().all(|v| *v == Verdict::Divergent));
}

#[test]
fn b_alpha_chain_on_koebe() {
    // b_α = (α+2) h for conformal maps, so brackets scale together.
    let b0 = estimate_b_alpha_of_map(&AnalyticMap::Koebe, 0.0, (0.3, 2.0), 10).unwrap();
    let b1 = estimate_b_alpha_of_map(&AnalyticMap::Koebe, 1.0, (0.5, 3.0), 10).unwrap();
    assert!(b0.p_low * 1.5 <= b1.p_high && b1.p_low <= b0.p_high * 1.5);
}

#[test]
fn hyperbolic_examples() {
    assert!(
        (hyperbolic_distance_disk(c(0.0, 0.0), c(0.5, 0.0)).unwrap() - 0.5 * 3f64.ln()).abs()
            < 1e-12
    );
    assert_eq!(
        hyperbolic_distance_disk(c(0.3, 0.1), c(0.3, 0.1)).unwrap(),
        0.0
    );
    assert!(hyperbolic_distance_disk(c(1.0, 0.0), c(0.0, 0.0)).is_err());
}

#[test]
fn closed_form_green_on_the_slit_plane() {
    let d = ClosedFormDomain::SlitPlane { tip: -1.0 };
    assert!((d.green(c(0.0, 0.0), c(8.0, 0.0)).unwrap() - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn gauss_legendre_is_exact_for_polynomials() {
    let gl = GaussLegendre::new();
    for k in 0..=31 {
        let v = gl.integrate(0.0, 1.0, |x| x.powi(k));
        assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14);
    }
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.99f64, 0.0..(2.0 * PI)).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #[test]
    fn hyperbolic_distance_is_symmetric_and_invariant(z in disk_point(), w in disk_point(), a in disk_point(), t in 0.0..(2.0 * PI)) {
        let d = hyperbolic_distance_disk(z, w).unwrap();
        prop_assert!((d - hyperbolic_distance_disk(w, z).unwrap()).abs() <= 1e-9 * (1.0 + d));
        // Disk automorphism z -> e^{it} (z - a)/(1 - conj(a) z).
        let m = |x: Complex64| Complex64::from_polar(1.0, t) * (x - a) / (1.0 - a.conj() * x);
        let dm = hyperbolic_distance_disk(m(z), m(w)).unwrap();
        prop_assert!((d - dm).abs() <= 1e-6 * (1.0 + d));
    }

    #[test]
    fn closed_form_green_is_symmetric(z in disk_point(), w in disk_point()) {
        prop_assume!((z - w).norm() > 1e-6);
        for d in [ClosedFormDomain::Disk { radius: 1.0 }, ClosedFormDomain::SlitPlane { tip: -1.0 }] {
            let (g1, g2) = (d.green(z, w).unwrap(), d.green(w, z).unwrap());
            prop_assert!((g1 - g2).abs() <= 1e-9 * (1.0 + g1.abs()));
            prop_assert!(g1 > 0.0);
        }
    }
}
