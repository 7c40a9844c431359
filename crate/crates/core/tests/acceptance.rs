//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one `PASS` or `FAIL` line; exits non-zero if any
//! criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use ballgreen::geometry::{bracket, mobius, mobius_jacobian_factor};
use ballgreen::norms::{
    green_q_integral, lambda1, lemma2_closed_i0, lemma2_profile, lp_lower_bound,
    riesz_potential_bound, riesz_thorin_bound, riesz_thorin_branch, theorem1_norm, try_sup_scan,
    RieszThorinBranch, TestSource,
};
use ballgreen::potential::{apply_green, laplacian_residual};
use ballgreen::quadrature::{sample_direction, McRng, QuadratureSpec};
use ballgreen::specfun::{bessel_first_zero, hyp2f1, hyp2f1_derivative, ln_gamma, Hyp2F1Params};
use ballgreen::{BallDim64, Error, ExponentPair64, Phi1_64, Point64, Result, SourceField64};
use common::*;
use rand::{Rng, SeedableRng};

const NORM_PAIRS: [(usize, f64); 6] = [(3, 1.5), (3, 2.0), (3, 2.5), (4, 1.25), (4, 1.5), (5, 1.2)];
const MC_SAMPLES: usize = 200_000;
const SEED: u64 = 7;
/// `|Δ_{h/2}| / |Δ_h|` accepted as a second-order trend (exact value 1/4).
const TREND_RATIO: f64 = 0.35;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn dim(n: usize) -> BallDim64 {
    BallDim64::new(n).expect("n >= 3")
}

fn mc(salt: u64) -> QuadratureSpec {
    QuadratureSpec::monte_carlo(MC_SAMPLES, SEED.wrapping_add(salt))
}

fn rng(stream: u64) -> McRng {
    let mut r = McRng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn random_point(r: &mut McRng, n: usize, max_radius: f64) -> Point64 {
    let dir = sample_direction::<f64>(r, n);
    let rad = max_radius * r.random::<f64>().powf(1.0 / n as f64);
    Point64::new(dir.into_iter().map(|c| c * rad).collect())
}

fn linf_norm_cross_check() -> Result<Outcome> {
    let start = Instant::now();
    let gl = QuadratureSpec::default();
    let (mut worst_rel, mut worst_z, mut argmax_ok) = (0.0f64, 0.0f64, true);
    for (i, &(n, q)) in NORM_PAIRS.iter().enumerate() {
        let d = dim(n);
        let ep = ExponentPair64::from_q(q)?;
        let closed = theorem1_norm(&d, &ep)?;
        let reduced = green_q_integral(&d, &ep, 0.0, &gl)?.value.powf(1.0 / q);
        worst_rel = worst_rel.max(rel(reduced, closed));
        let est = green_q_integral(&d, &ep, 0.0, &mc(400 + i as u64))?;
        worst_z = worst_z.max((est.value - closed.powf(q)).abs() / est.std_error);
        let (t_star, _) = try_sup_scan(
            |t| green_q_integral(&d, &ep, t, &gl).map(|e| e.value),
            64,
            true,
        )?;
        argmax_ok &= t_star == 0.0;
    }
    let elapsed = start.elapsed();
    outcome(
        worst_rel <= 1e-3 && worst_z <= 3.0 && argmax_ok && elapsed < Duration::from_secs(60),
        format!(
            "max rel_err {worst_rel:.2e} (<= 1e-3), max |z| {worst_z:.2} (<= 3), argmax at 0: {argmax_ok}, {:.1} s (< 60 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn linf_identity() -> Result<Outcome> {
    let one = SourceField64::const_one();
    let (mut worst_rel, mut worst_z) = (0.0f64, 0.0f64);
    for n in [3, 4, 5] {
        let d = dim(n);
        for (i, t) in [0.0, 0.3, 0.6, 0.9].into_iter().enumerate() {
            let x = Point64::on_axis(n, i % n, t);
            let s = apply_green(&d, &one, &x, &mc(500 + 10 * n as u64 + i as u64))?;
            let want = (1.0 - t * t) / (2.0 * n as f64);
            worst_rel = worst_rel.max(rel(s.value, want));
            worst_z = worst_z.max((s.value - want).abs() / s.std_error);
        }
    }
    outcome(
        worst_rel <= 1e-2 && worst_z <= 3.0,
        format!("{MC_SAMPLES} samples: max rel_err {worst_rel:.2e} (<= 1e-2), max |z| {worst_z:.2} (<= 3)"),
    )
}

fn lambda1_and_l2() -> Result<Outcome> {
    let lam_err = (lambda1(&dim(3))? - PI * PI).abs();
    let mut worst_ratio = 0.0f64;
    let mut worst_edge = 0.0f64;
    for n in [3, 4, 5] {
        let d = dim(n);
        let phi = Phi1_64::new(&d)?;
        let lam = phi.lambda();
        let nf = n as f64;
        for i in 1..=9 {
            let r = 0.1 * i as f64;
            let res = |h: f64| {
                let (um, u0, up) = (phi.value(r - h), phi.value(r), phi.value(r + h));
                ((up - 2.0 * u0 + um) / (h * h) + (nf - 1.0) / r * (up - um) / (2.0 * h) + lam * u0)
                    .abs()
            };
            let (coarse, fine) = (res(1e-2), res(5e-3));
            if coarse > 1e-9 {
                worst_ratio = worst_ratio.max(fine / coarse);
            }
        }
        worst_edge = worst_edge.max(phi.value(1.0).abs());
    }
    let w = lp_lower_bound(&dim(3), 2.0, TestSource::Phi1, &QuadratureSpec::default())?.value;
    let w_rel = rel(w, 1.0 / (PI * PI));
    outcome(
        lam_err <= 1e-10 && worst_ratio <= TREND_RATIO && worst_edge <= 1e-10 && w_rel <= 1e-3,
        format!(
            "|lambda1(3) - pi^2| {lam_err:.1e} (<= 1e-10), residual ratio {worst_ratio:.3} (<= {TREND_RATIO}), \
             L2 witness rel_err {w_rel:.1e} (<= 1e-3)"
        ),
    )
}

fn profile_max_at_zero() -> Result<Outcome> {
    let gl = QuadratureSpec::default();
    let (mut worst_ratio, mut i0_err) = (0.0f64, 0.0f64);
    for &(n, q) in NORM_PAIRS.iter() {
        let d = dim(n);
        let ep = ExponentPair64::from_q(q)?;
        let i0 = lemma2_profile(&d, &ep, 0.0, &gl)?;
        i0_err = i0_err.max(rel(i0, lemma2_closed_i0(&d, &ep)?));
        for i in 1..64 {
            let t = (1.0 - 1e-3) * i as f64 / 63.0;
            worst_ratio = worst_ratio.max(lemma2_profile(&d, &ep, t, &gl)? / i0);
        }
    }
    outcome(
        worst_ratio <= 1.0 && i0_err <= 1e-9,
        format!("max I(t)/I(0) {worst_ratio:.6} (<= 1), I(0) rel_err {i0_err:.1e} (<= 1e-9)"),
    )
}

fn riesz_thorin_structure() -> Result<Outcome> {
    let gl = QuadratureSpec::default();
    let (mut branches, mut endpoints, mut witnesses) = (true, true, true);
    let mut worst = 0.0f64;
    for n in [3, 4] {
        let d = dim(n);
        let lam = lambda1(&d)?;
        let lo = riesz_thorin_branch(&d, RieszThorinBranch::Low, 2.0)?;
        let hi = riesz_thorin_branch(&d, RieszThorinBranch::High, 2.0)?;
        branches &= rel(lo, hi) <= 1e-14;
        let two_n = 1.0 / (2.0 * n as f64);
        endpoints &= riesz_thorin_bound(&d, 1.0)? == two_n
            && riesz_thorin_bound(&d, 2.0)? == 1.0 / lam
            && riesz_thorin_bound(&d, f64::INFINITY)? == two_n;
        for p in [1.5, 2.0, 3.0, 4.0] {
            let bound = riesz_thorin_bound(&d, p)?;
            for source in [TestSource::ConstOne, TestSource::Phi1] {
                let w = lp_lower_bound(&d, p, source, &gl)?;
                // the φ₁ witness attains the bound at p = 2; allow rounding
                witnesses &= w.value <= bound * (1.0 + 1e-12) + 3.0 * w.std_error;
                worst = worst.max(w.value / bound);
            }
        }
    }
    outcome(
        branches && endpoints && witnesses,
        format!("branches agree at p=2: {branches}, exact endpoints: {endpoints}, max witness/bound {worst:.12}"),
    )
}

fn special_functions() -> Result<Outcome> {
    const DRAWS: usize = 200;
    let mut r = rng(1);
    let f = |a: f64, b: f64, c: f64, t: f64| hyp2f1(&Hyp2F1Params::new(a, b, c, t));
    let mixed = |x: f64, y: f64| (x - y).abs() / x.abs().max(1.0);
    let (mut euler, mut pfaff, mut kummer, mut deriv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut gamma_ok = true;
    for _ in 0..DRAWS {
        let b: f64 = r.random_range(0.1..3.0);
        let c = b + r.random_range(0.1..3.0);
        let a: f64 = r.random_range(-2.0..3.0);
        let t: f64 = r.random_range(0.0..0.9);
        let lhs = f(a, b, c, t)?;
        euler = euler.max(mixed(
            lhs,
            (1.0 - t).powf(c - a - b) * f(c - a, c - b, c, t)?,
        ));
        pfaff = pfaff.max(mixed(
            lhs,
            (1.0 - t).powf(-a) * f(a, c - b, c, t / (t - 1.0))?,
        ));

        let ts: f64 = r.random_range(-0.6..0.6);
        let d = hyp2f1_derivative(&Hyp2F1Params::new(a, b, c, ts))?;
        deriv = deriv.max(mixed(d, hyp2f1_series_derivative(a, b, c, ts)));

        let ka: f64 = r.random_range(-2.0..2.0);
        let kb: f64 = r.random_range(0.2..3.0);
        let s: f64 = r.random_range(0.0..0.5);
        let k_lhs = f(ka, kb, 2.0 * kb, 4.0 * s / ((1.0 + s) * (1.0 + s)))?;
        let k_rhs = (1.0 + s).powf(2.0 * ka) * f(ka, ka + 0.5 - kb, kb + 0.5, s * s)?;
        kummer = kummer.max(mixed(k_lhs, k_rhs));

        let m: f64 = r.random_range(0.1..6.0);
        let p: f64 = r.random_range(0.1..6.0);
        let k = r.random_range(-m..p);
        let g_lhs = ln_gamma(p)? + ln_gamma(m)?;
        let g_rhs = ln_gamma(p - k)? + ln_gamma(m + k)?;
        let slack = 1e-12 * g_lhs.abs().max(1.0);
        gamma_ok &= if k * (p - m - k) >= 0.0 {
            g_lhs >= g_rhs - slack
        } else {
            g_lhs <= g_rhs + slack
        };
    }
    let mut zero_err = 0.0f64;
    for alpha in [0.0, 0.5, 1.0, 1.5] {
        zero_err = zero_err.max((bessel_first_zero(alpha)? - bessel_zero_bisection(alpha)).abs());
    }
    let worst = euler.max(pfaff).max(kummer).max(deriv);
    outcome(
        worst <= 1e-9 && gamma_ok && zero_err <= 1e-12,
        format!(
            "{DRAWS} draws: euler {euler:.1e}, pfaff {pfaff:.1e}, kummer {kummer:.1e}, derivative {deriv:.1e} (<= 1e-9), \
             gamma inequality: {gamma_ok}, bessel zeros {zero_err:.1e} (<= 1e-12)"
        ),
    )
}

fn mobius_suite() -> Result<Outcome> {
    let (mut norm_id, mut centre, mut boundary, mut jac) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut inside = true;
    for n in [3, 4, 5] {
        let d = dim(n);
        let mut r = rng(10 + n as u64);
        for _ in 0..100 {
            let x = random_point(&mut r, n, 0.99);
            let y = random_point(&mut r, n, 0.99);
            let ty = mobius(&x, &y)?;
            norm_id = norm_id.max((ty.norm() - x.distance(&y) / bracket(&x, &y)?).abs());
            inside &= ty.norm() < 1.0;
            centre = centre.max(mobius(&x, &x)?.norm());
            let eta = Point64::new(sample_direction(&mut r, n));
            boundary = boundary.max((mobius(&x, &eta)?.norm() - 1.0).abs());

            let xs = random_point(&mut r, n, 0.9);
            let z = random_point(&mut r, n, 0.9);
            let h = 1e-5;
            let minus_x = xs.scaled(-1.0);
            let mut m = vec![vec![0.0; n]; n];
            for j in 0..n {
                let mut plus = z.coords().to_vec();
                let mut minus = z.coords().to_vec();
                plus[j] += h;
                minus[j] -= h;
                let fp = mobius(&minus_x, &Point64::new(plus))?;
                let fm = mobius(&minus_x, &Point64::new(minus))?;
                for i in 0..n {
                    m[i][j] = (fp.coords()[i] - fm.coords()[i]) / (2.0 * h);
                }
            }
            jac = jac.max(rel(det(m).abs(), mobius_jacobian_factor(&d, &xs, &z)?));
        }
    }
    outcome(
        norm_id <= 1e-12 && inside && boundary <= 1e-12 && centre <= 1e-14 && jac <= 1e-6,
        format!(
            "100 pairs x n in {{3,4,5}}: norm identity {norm_id:.1e}, boundary {boundary:.1e}, |T_x x| {centre:.1e}, \
             jacobian rel_err {jac:.1e} (<= 1e-6)"
        ),
    )
}

fn poisson_residual() -> Result<Outcome> {
    let gl = QuadratureSpec::default();
    let (mut worst_ratio, mut worst_z) = (0.0f64, 0.0f64);
    for n in [3, 4, 5] {
        let d = dim(n);
        let x = Point64::on_axis(n, 0, 0.3);
        for g in [
            SourceField64::const_one(),
            SourceField64::coord_1(),
            SourceField64::phi1(&d)?,
        ] {
            let coarse = laplacian_residual(&d, &g, &x, 2e-2, &gl)?.value.abs();
            let fine = laplacian_residual(&d, &g, &x, 1e-2, &gl)?.value.abs();
            if coarse > 1e-7 {
                worst_ratio = worst_ratio.max(fine / coarse);
            }
        }
        let coord = SourceField64::coord_1();
        for (i, t) in [0.2, 0.5, 0.8].into_iter().enumerate() {
            let x = Point64::on_axis(n, 0, t);
            let s = apply_green(&d, &coord, &x, &mc(1000 + 10 * n as u64 + i as u64))?;
            let want = (1.0 - t * t) * t / (2.0 * n as f64 + 4.0);
            worst_z = worst_z.max((s.value - want).abs() / s.std_error);
        }
    }
    outcome(
        worst_ratio <= TREND_RATIO && worst_z <= 3.0,
        format!("residual ratio h/2 : h {worst_ratio:.3} (<= {TREND_RATIO}), coord_1 max |z| {worst_z:.2} (<= 3)"),
    )
}

fn riesz_potential() -> Result<Outcome> {
    let d3 = dim(3);
    let v = riesz_potential_bound(&d3, 2.0 / 3.0, 2.0, 2.0, 4.0 * PI / 3.0)?;
    let err = rel(v, 2.0 * PI);
    let rejects = matches!(
        riesz_potential_bound(&d3, 0.5, 1.0, 2.0, 1.0),
        Err(Error::Admissibility(_))
    );
    outcome(
        err <= 1e-12 && rejects,
        format!("value {v:.15} rel_err {err:.1e} (<= 1e-12), rejects delta >= mu: {rejects}"),
    )
}

fn reproducibility() -> Result<Outcome> {
    let dir = std::env::temp_dir().join(format!("ballgreen-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut artifacts = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut all_ok = true;
    for run in 0..2 {
        let path = dir.join(format!("verify-{run}.csv"));
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_ballgreen"))
            .args(["verify", "--suite", "all", "--seed", "7", "--out"])
            .arg(&path)
            .env_remove("BALLGREEN_SEED")
            .status()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        slowest = slowest.max(start.elapsed());
        all_ok &= status.success();
        artifacts.push(std::fs::read(&path).map_err(|e| Error::InvalidParameter(e.to_string()))?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    let identical = artifacts[0] == artifacts[1] && !artifacts[0].is_empty();
    let rows = artifacts[0]
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
        .saturating_sub(1);
    outcome(
        identical && all_ok && slowest < Duration::from_secs(300),
        format!(
            "{rows} rows, byte-identical: {identical}, all properties pass: {all_ok}, slowest run {:.1} s (< 300 s)",
            slowest.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        (
            "L^p -> L^inf norm: closed form vs reduced, Monte Carlo and sup scan",
            linf_norm_cross_check,
        ),
        (
            "L^inf identity: integral of G(x, .) equals (1-|x|^2)/(2n)",
            linf_identity,
        ),
        ("first eigenvalue and the L^2 norm", lambda1_and_l2),
        (
            "radial profile attains its maximum at the centre",
            profile_max_at_zero,
        ),
        (
            "interpolated L^p bounds: branches, endpoints, witnesses",
            riesz_thorin_structure,
        ),
        (
            "special-function identities and Bessel zeros",
            special_functions,
        ),
        (
            "Moebius maps: norm identity, ball preservation, Jacobian",
            mobius_suite,
        ),
        (
            "Poisson residual and the coord_1 closed form",
            poisson_residual,
        ),
        ("Riesz potential bound evaluator", riesz_potential),
        (
            "reproducibility and runtime of the full verify suite",
            reproducibility,
        ),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match check() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "{} criterion {:>2}: {name} [{detail}] ({:.1} s)",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
