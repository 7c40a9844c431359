mod common;

use std::f64::consts::PI;

use ballgreen::norms::{
    green_q_integral, green_q_integral_via, lambda1, lemma2_closed_i0, lemma2_profile,
    riesz_potential_bound, riesz_thorin_bound, riesz_thorin_bound_as_printed, riesz_thorin_branch,
    sup_scan, theorem1_norm, GreenQRoute, RieszThorinBranch,
};
use ballgreen::quadrature::QuadratureSpec;
use ballgreen::{BallDim64, Error, ExponentPair64};
use common::*;
use proptest::prelude::*;

fn dim(n: usize) -> BallDim64 {
    BallDim64::new(n).unwrap()
}

/// Admissible `q` for dimension `n` from a fraction of the admissible range.
fn q_at(n: usize, frac: f64) -> f64 {
    let qmax = n as f64 / (n as f64 - 2.0);
    1.0 + frac * (qmax - 1.0)
}

#[test]
fn reference_values() {
    let d3 = dim(3);
    let ep = ExponentPair64::from_q(2.0).unwrap();
    assert!(rel(lemma2_closed_i0(&d3, &ep).unwrap(), 1.0 / 3.0) < 1e-14);
    let g0 = green_q_integral(&d3, &ep, 0.0, &QuadratureSpec::default()).unwrap();
    assert!(rel(g0.value, 1.0 / (12.0 * PI)) < 1e-10);
    let mid = green_q_integral(&d3, &ep, 0.5, &QuadratureSpec::default()).unwrap();
    assert!(mid.value < g0.value);
    assert!(rel(lambda1(&d3).unwrap(), PI * PI) < 1e-14);
    let j11 = bessel_zero_bisection(1.0);
    assert!(rel(lambda1(&dim(4)).unwrap(), j11 * j11) < 1e-12);
    for n in 3..=7 {
        let d = dim(n);
        let one = ExponentPair64::from_q(1.0).unwrap();
        assert!(rel(theorem1_norm(&d, &one).unwrap(), 1.0 / (2.0 * n as f64)) < 1e-14);
    }
}

#[test]
fn inadmissible_pairs_are_rejected() {
    let d3 = dim(3);
    let edge = ExponentPair64::from_q(3.0).unwrap();
    assert!(matches!(
        theorem1_norm(&d3, &edge),
        Err(Error::Admissibility(_))
    ));
    assert!(lemma2_closed_i0(&d3, &ExponentPair64::from_q(3.5).unwrap()).is_err());
    assert!(ExponentPair64::from_q(0.5).is_err());
    assert!(ExponentPair64::from_p(1.0).is_err());
    let ep = ExponentPair64::from_q(2.0).unwrap();
    assert!(green_q_integral(&d3, &ep, 1.0, &QuadratureSpec::default()).is_err());
}

#[test]
fn riesz_thorin_endpoints_and_printed_variant() {
    for n in 3..=6 {
        let d = dim(n);
        let two_n = 2.0 * n as f64;
        let lam = lambda1(&d).unwrap();
        assert_eq!(riesz_thorin_bound(&d, 1.0).unwrap(), 1.0 / two_n);
        assert_eq!(riesz_thorin_bound(&d, 2.0).unwrap(), 1.0 / lam);
        assert_eq!(riesz_thorin_bound(&d, f64::INFINITY).unwrap(), 1.0 / two_n);
        let lo = riesz_thorin_branch(&d, RieszThorinBranch::Low, 2.0).unwrap();
        let hi = riesz_thorin_branch(&d, RieszThorinBranch::High, 2.0).unwrap();
        assert!(rel(lo, hi) < 1e-14);
        // the literal exponent (p-2)/p sends the p → ∞ limit to 2n instead of 1/(2n)
        let printed = riesz_thorin_bound_as_printed(&d, 1e12).unwrap();
        assert!(rel(printed, two_n) < 1e-6);
    }
    assert!(riesz_thorin_bound(&dim(3), 0.5).is_err());
}

#[test]
fn riesz_potential_bound_values() {
    let d3 = dim(3);
    let v = riesz_potential_bound(&d3, 2.0 / 3.0, 2.0, 2.0, 4.0 * PI / 3.0).unwrap();
    assert!(rel(v, 2.0 * PI) < 1e-12);
    // δ = 1/p - 1/q = 1/2 ≥ μ
    assert!(matches!(
        riesz_potential_bound(&d3, 0.5, 1.0, 2.0, 1.0),
        Err(Error::Admissibility(_))
    ));
    assert!(riesz_potential_bound(&d3, 0.5, 2.0, 1.0, 1.0).is_err());
    assert!(riesz_potential_bound(&d3, 1.5, 2.0, 2.0, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugate_exponents(q in 1.0f64..50.0) {
        let ep = ExponentPair64::from_q(q).unwrap();
        let back = ExponentPair64::from_p(ep.p()).unwrap();
        prop_assert!((back.q() - q).abs() <= 1e-12 * q);
        if q > 1.0 {
            prop_assert!((1.0 / ep.p() + 1.0 / ep.q() - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn closed_forms_are_consistent(n in 3usize..=6, frac in 0.0f64..0.98) {
        let d = dim(n);
        let ep = ExponentPair64::from_q(q_at(n, frac)).unwrap();
        let direct = theorem1_norm(&d, &ep).unwrap();
        let i0 = lemma2_closed_i0(&d, &ep).unwrap();
        let via = d.c_n() * (d.omega() * i0).powf(1.0 / ep.q());
        prop_assert!(rel(via, direct) <= 1e-10);
        // I(0) = ∫₀¹ (1 - r^{n-2})^q r^{a-1} dr = (1/a) ∫₀¹ (1 - v^{(n-2)/a})^q dv
        let nm2 = n as f64 - 2.0;
        let a = ep.a(&d);
        let oracle = tanh_sinh(|v, _| (1.0 - v.powf(nm2 / a)).powf(ep.q())) / a;
        prop_assert!(rel(i0, oracle) <= 1e-9, "{i0} vs {oracle}");
        let profile = lemma2_profile(&d, &ep, 0.0, &QuadratureSpec::default()).unwrap();
        prop_assert!(rel(profile, i0) <= 1e-9);
    }

    #[test]
    fn three_dimensional_sine_form(q in 1.0f64..2.95) {
        prop_assume!((q - 2.0).abs() > 1e-3 && q > 1.0 + 1e-3);
        let ep = ExponentPair64::from_q(q).unwrap();
        let sine = PI * q * (1.0 - q) * (2.0 - q) / (6.0 * (PI * q).sin());
        prop_assert!(rel(lemma2_closed_i0(&dim(3), &ep).unwrap(), sine) <= 1e-10);
    }

    #[test]
    fn profile_decreases_in_radius(
        n in 3usize..=5,
        frac in 0.05f64..0.95,
        t1 in 0.0f64..0.99,
        t2 in 0.0f64..0.99,
    ) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
        let d = dim(n);
        let ep = ExponentPair64::from_q(q_at(n, frac)).unwrap();
        let spec = QuadratureSpec::default();
        prop_assert!(lemma2_profile(&d, &ep, hi, &spec).unwrap() < lemma2_profile(&d, &ep, lo, &spec).unwrap());
        let g_lo = green_q_integral(&d, &ep, lo, &spec).unwrap().value;
        let g_hi = green_q_integral(&d, &ep, hi, &spec).unwrap().value;
        prop_assert!(g_hi <= g_lo * (1.0 + 1e-12));
    }

    #[test]
    fn reduced_and_raw_routes_agree(n in 3usize..=5, frac in 0.05f64..0.6, t in 0.0f64..0.9) {
        let d = dim(n);
        let ep = ExponentPair64::from_q(q_at(n, frac)).unwrap();
        let spec = QuadratureSpec::default();
        let reduced = green_q_integral_via(&d, &ep, t, &spec, GreenQRoute::Reduced).unwrap().value;
        let raw = green_q_integral_via(&d, &ep, t, &spec, GreenQRoute::RawZonal).unwrap().value;
        prop_assert!(rel(raw, reduced) <= 1e-6, "{raw} vs {reduced}");
    }

    #[test]
    fn riesz_thorin_is_log_linear_in_inverse_p(n in 3usize..=6, th1 in 0.0f64..1.0, th2 in 0.0f64..1.0) {
        let d = dim(n);
        let ln_bound = |theta: f64| {
            let p = if theta == 0.0 { f64::INFINITY } else { 1.0 / theta };
            riesz_thorin_bound(&d, p).unwrap().ln()
        };
        // both thetas on the same side of 1/2
        let (a, b) = if th1 < 0.5 { (th1, th2 * 0.5) } else { (th1, 0.5 + th2 * 0.5) };
        let mid = ln_bound(0.5 * (a + b));
        prop_assert!((mid - 0.5 * (ln_bound(a) + ln_bound(b))).abs() <= 1e-12 * mid.abs().max(1.0));
    }

    #[test]
    fn sup_scan_locates_interior_maximum(c in 0.0f64..0.99) {
        let (t, v) = sup_scan(|t: f64| 1.0 - (t - c).powi(2), 64, true);
        prop_assert!((t - c).abs() <= 1e-6, "{t} vs {c}");
        prop_assert!((1.0 - 1e-12..=1.0).contains(&v));
    }

    #[test]
    fn riesz_potential_bound_scales_with_volume(mu in 0.1f64..1.0, vol in 0.1f64..10.0) {
        let d = dim(3);
        let a = riesz_potential_bound(&d, mu, 2.0, 2.0, vol).unwrap();
        let b = riesz_potential_bound(&d, mu, 2.0, 2.0, 2.0 * vol).unwrap();
        prop_assert!(rel(b / a, 2f64.powf(mu)) <= 1e-12);
    }
}
