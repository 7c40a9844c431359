//! Property batteries behind `verify --suite`.
//!
//! Every row is a property row: `closed_form` holds the reference the property
//! is decided against (0 for error measurements) and `numeric` the measured
//! value. Dimension-free rows report `n = 0`.

use rand::{Rng, SeedableRng};

use super::{Row, RunConfig, Suite};
use crate::error::Result;
use crate::geometry::{
    bracket, green, mobius, mobius_jacobian_factor, poisson_kernel, BallDim, Point,
};
use crate::norms::{
    green_q_integral, lambda1, lemma2_closed_i0, lemma2_profile, lp_lower_bound,
    riesz_potential_bound, riesz_thorin_bound, riesz_thorin_branch, sup_scan, theorem1_norm,
    try_sup_scan, ExponentPair, RieszThorinBranch, TestSource,
};
use crate::potential::{apply_green, laplacian_residual, Phi1, SourceField};
use crate::quadrature::{
    ball_zonal_integral, ball_zonal_integral_focused, gauss_legendre_rule, monte_carlo_ball,
    sample_direction, sphere_zonal_integral, McRng, QuadratureSpec, ZonalCoord,
};
use crate::specfun::{bessel_first_zero, hyp2f1, hyp2f1_derivative, ln_gamma, Hyp2F1Params};

/// Randomised parameter draws per identity.
const DRAWS: usize = 200;
/// Randomised point pairs per dimension.
const PAIRS: usize = 100;
/// Ratio `|Δ_{h/2}| / |Δ_h|` accepted as a second-order trend (exact: 1/4).
const TREND_RATIO: f64 = 0.35;

/// Pairs `(n, q)` for the norm cross-checks.
const NORM_PAIRS: [(usize, f64); 6] = [(3, 1.5), (3, 2.0), (3, 2.5), (4, 1.25), (4, 1.5), (5, 1.2)];

pub(super) fn run_suite(cfg: &RunConfig) -> Result<Vec<Row>> {
    let suites: &[Suite] = match cfg.suite {
        Suite::All => &[
            Suite::Specfun,
            Suite::Geometry,
            Suite::Quadrature,
            Suite::Norms,
            Suite::Potential,
        ],
        ref s => std::slice::from_ref(s),
    };
    let mut rows = Vec::new();
    for suite in suites {
        rows.extend(match suite {
            Suite::Specfun => specfun(cfg)?,
            Suite::Geometry => geometry(cfg)?,
            Suite::Quadrature => quadrature(cfg)?,
            Suite::Norms => norms(cfg)?,
            Suite::Potential => potential(cfg)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(rows)
}

fn rng(cfg: &RunConfig, stream: u64) -> McRng {
    let mut r = McRng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn dims(cfg: &RunConfig, default: &[usize]) -> Vec<usize> {
    match cfg.n {
        Some(n) => vec![n],
        None => default.to_vec(),
    }
}

fn mc(cfg: &RunConfig, salt: u64) -> QuadratureSpec {
    QuadratureSpec::monte_carlo(cfg.samples, cfg.seed.wrapping_add(salt))
}

/// `|a - b| / max(1, |a|)`.
fn mixed_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(1.0)
}

fn error_row(name: &str, n: usize, worst: f64, tol: f64) -> Row {
    Row::property(name, n, 0.0, worst, worst <= tol)
}

fn random_point(rng: &mut McRng, n: usize, max_radius: f64) -> Point<f64> {
    let dir = sample_direction::<f64>(rng, n);
    let r = max_radius * rng.random::<f64>().powf(1.0 / n as f64);
    Point::new(dir.into_iter().map(|c| c * r).collect())
}

fn random_unit(rng: &mut McRng, n: usize) -> Point<f64> {
    Point::new(sample_direction::<f64>(rng, n))
}

fn specfun(cfg: &RunConfig) -> Result<Vec<Row>> {
    let mut r = rng(cfg, 101);
    let (mut euler, mut pfaff, mut kummer, mut deriv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..DRAWS {
        let b: f64 = r.random_range(0.1..3.0);
        let c = b + r.random_range(0.1..3.0);
        let a: f64 = r.random_range(-2.0..3.0);
        let t: f64 = r.random_range(0.0..0.9);
        let f = hyp2f1(&Hyp2F1Params::new(a, b, c, t))?;
        let e = (1.0 - t).powf(c - a - b) * hyp2f1(&Hyp2F1Params::new(c - a, c - b, c, t))?;
        euler = euler.max(mixed_err(f, e));
        let p = (1.0 - t).powf(-a) * hyp2f1(&Hyp2F1Params::new(a, c - b, c, t / (t - 1.0)))?;
        pfaff = pfaff.max(mixed_err(f, p));

        let ts = r.random_range(0.05..0.85);
        let h = 1e-5;
        let at = |x: f64| hyp2f1(&Hyp2F1Params::new(a, b, c, x));
        let fd = (at(ts + h)? - at(ts - h)?) / (2.0 * h);
        let d = hyp2f1_derivative(&Hyp2F1Params::new(a, b, c, ts))?;
        deriv = deriv.max(mixed_err(d, fd));

        let ka: f64 = r.random_range(-2.0..2.0);
        let kb: f64 = r.random_range(0.2..3.0);
        let s: f64 = r.random_range(0.0..0.5);
        let lhs = hyp2f1(&Hyp2F1Params::new(
            ka,
            kb,
            2.0 * kb,
            4.0 * s / ((1.0 + s) * (1.0 + s)),
        ))?;
        let rhs = (1.0 + s).powf(2.0 * ka)
            * hyp2f1(&Hyp2F1Params::new(ka, ka + 0.5 - kb, kb + 0.5, s * s))?;
        kummer = kummer.max(mixed_err(lhs, rhs));
    }

    // Γ(p)Γ(m) ≥ Γ(p-k)Γ(m+k) when k(p-m-k) ≥ 0, reversed when ≤ 0
    let mut gamma_violation = 0.0f64;
    for _ in 0..DRAWS {
        let m = r.random_range(0.1..6.0);
        let p = r.random_range(0.1..6.0);
        let k = r.random_range(-m..p);
        let lhs: f64 = ln_gamma(p)? + ln_gamma(m)?;
        let rhs = ln_gamma(p - k)? + ln_gamma(m + k)?;
        let sign = k * (p - m - k);
        let v = if sign >= 0.0 { rhs - lhs } else { lhs - rhs };
        gamma_violation = gamma_violation.max(v / lhs.abs().max(1.0));
    }

    let mut recurrence = 0.0f64;
    for i in 0..1000 {
        let x = 0.1 + 99.9 * i as f64 / 999.0;
        recurrence = recurrence.max((ln_gamma(x + 1.0)? - ln_gamma(x)? - x.ln()).abs());
    }

    let zeros = [
        (0.0, 2.404_825_557_695_773),
        (0.5, std::f64::consts::PI),
        (1.0, 3.831_705_970_207_512),
        (1.5, 4.493_409_457_909_064),
    ];
    let mut zero_err = 0.0f64;
    for (alpha, z) in zeros {
        zero_err = zero_err.max((bessel_first_zero(alpha)? - z).abs());
    }

    Ok(vec![
        error_row("specfun.euler_identity", 0, euler, 1e-9),
        error_row("specfun.pfaff_identity", 0, pfaff, 1e-9),
        error_row("specfun.kummer_quadratic", 0, kummer, 1e-9),
        error_row("specfun.derivative_identity", 0, deriv, 1e-6),
        error_row(
            "specfun.gamma_inequality",
            0,
            gamma_violation.max(0.0),
            1e-12,
        ),
        error_row("specfun.gamma_recurrence", 0, recurrence, 1e-12),
        error_row("specfun.bessel_zeros", 0, zero_err, 1e-12),
    ])
}

fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty");
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col];
        d *= p;
        for row in col + 1..n {
            let f = m[row][col] / p;
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    d
}

/// Determinant of the Jacobian of `z ↦ T_{-x} z` by central differences.
fn fd_jacobian_det(x: &Point<f64>, z: &Point<f64>, h: f64) -> Result<f64> {
    let n = z.dim();
    let minus_x = x.scaled(-1.0);
    let mut m = vec![vec![0.0; n]; n];
    for j in 0..n {
        let mut plus = z.coords().to_vec();
        let mut minus = z.coords().to_vec();
        plus[j] += h;
        minus[j] -= h;
        let fp = mobius(&minus_x, &Point::new(plus))?;
        let fm = mobius(&minus_x, &Point::new(minus))?;
        for i in 0..n {
            m[i][j] = (fp.coords()[i] - fm.coords()[i]) / (2.0 * h);
        }
    }
    Ok(det(m))
}

/// `|Δ_h f(x)|` with the `(2n+1)`-point stencil.
fn fd_laplacian<F: Fn(&Point<f64>) -> Result<f64>>(f: F, x: &Point<f64>, h: f64) -> Result<f64> {
    let centre = f(x)?;
    let mut acc = 0.0;
    for i in 0..x.dim() {
        for s in [h, -h] {
            let mut c = x.coords().to_vec();
            c[i] += s;
            acc += f(&Point::new(c))? - centre;
        }
    }
    Ok((acc / (h * h)).abs())
}

/// Worst `|Δ_{h/2}| / |Δ_h|` over the given evaluations, ignoring pairs whose
/// coarse value is already at the rounding floor.
fn trend(pairs: &[(f64, f64, f64)]) -> f64 {
    pairs
        .iter()
        .filter(|(coarse, _, floor)| coarse > floor)
        .map(|(coarse, fine, _)| fine / coarse)
        .fold(0.0, f64::max)
}

fn geometry(cfg: &RunConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in dims(cfg, &[3, 4, 5]) {
        let dim = BallDim::<f64>::new(n)?;
        let mut r = rng(cfg, 200 + n as u64);
        let (mut norm_id, mut centre, mut boundary, mut bracket_viol) =
            (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let (mut inside, mut jac, mut sym, mut vanish) = (true, 0.0f64, 0.0f64, 0.0f64);
        for _ in 0..PAIRS {
            let x = random_point(&mut r, n, 0.99);
            let y = random_point(&mut r, n, 0.99);
            let br = bracket(&x, &y)?;
            let dist = x.distance(&y);
            let ty = mobius(&x, &y)?;
            norm_id = norm_id.max((ty.norm() - dist / br).abs());
            inside &= ty.norm() < 1.0;
            centre = centre.max(mobius(&x, &x)?.norm());
            let eta = random_unit(&mut r, n);
            boundary = boundary.max((mobius(&x, &eta)?.norm() - 1.0).abs());
            bracket_viol = bracket_viol
                .max(dist - br)
                .max(1.0 - x.norm() * y.norm() - br);

            let gxy = green(&dim, &x, &y)?;
            sym = sym.max((gxy - green(&dim, &y, &x)?).abs() / gxy.max(f64::MIN_POSITIVE));
            let scale = dim.c_n() * x.distance(&eta).powf(2.0 - n as f64);
            vanish = vanish.max(green(&dim, &x, &eta)? / scale);

            let xs = random_point(&mut r, n, 0.9);
            let z = random_point(&mut r, n, 0.9);
            let analytic = mobius_jacobian_factor(&dim, &xs, &z)?;
            let numeric = fd_jacobian_det(&xs, &z, 1e-5)?;
            jac = jac.max(((numeric - analytic) / analytic).abs());
        }

        let mut green_trend = Vec::new();
        let mut poisson_trend = Vec::new();
        while green_trend.len() < 20 {
            let x = random_point(&mut r, n, 0.8);
            let y = random_point(&mut r, n, 0.95);
            let d = x.distance(&y);
            if d <= 0.2 {
                continue;
            }
            let f = |p: &Point<f64>| green(&dim, p, &y);
            let floor = 1e-8 * green(&dim, &x, &y)? / (d * d);
            green_trend.push((
                fd_laplacian(f, &x, 1e-2)?,
                fd_laplacian(f, &x, 5e-3)?,
                floor,
            ));
            let eta = random_unit(&mut r, n);
            let d = x.distance(&eta);
            if d > 0.2 {
                let f = |p: &Point<f64>| poisson_kernel(&dim, p, &eta);
                let floor = 1e-8 * poisson_kernel(&dim, &x, &eta)? / (d * d);
                poisson_trend.push((
                    fd_laplacian(f, &x, 1e-2)?,
                    fd_laplacian(f, &x, 5e-3)?,
                    floor,
                ));
            }
        }

        rows.push(error_row(
            "geometry.mobius_norm_identity",
            n,
            norm_id,
            1e-12,
        ));
        rows.push(Row::property(
            "geometry.ball_preservation",
            n,
            0.0,
            boundary,
            inside && boundary <= 1e-12,
        ));
        rows.push(error_row(
            "geometry.mobius_sends_x_to_origin",
            n,
            centre,
            1e-14,
        ));
        rows.push(error_row(
            "geometry.bracket_bounds",
            n,
            bracket_viol.max(0.0),
            1e-15,
        ));
        rows.push(error_row(
            "geometry.jacobian_finite_difference",
            n,
            jac,
            1e-6,
        ));
        rows.push(error_row("geometry.green_symmetry", n, sym, 1e-12));
        rows.push(error_row(
            "geometry.green_vanishes_on_sphere",
            n,
            vanish,
            1e-12,
        ));
        let g = trend(&green_trend);
        rows.push(Row::property(
            "geometry.green_harmonic",
            n,
            0.25,
            g,
            g <= TREND_RATIO,
        ));
        let p = trend(&poisson_trend);
        rows.push(Row::property(
            "geometry.poisson_harmonic",
            n,
            0.25,
            p,
            p <= TREND_RATIO,
        ));
    }
    Ok(rows)
}

fn quadrature(cfg: &RunConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let mut exact = 0.0f64;
    for k in 2..=20 {
        let (x, w) = gauss_legendre_rule::<f64>(k);
        for d in 0..2 * k {
            let v: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.powi(d as i32)).sum();
            exact = exact.max((v * (d + 1) as f64 - 1.0).abs());
        }
    }
    rows.push(error_row(
        "quadrature.gauss_legendre_exactness",
        0,
        exact,
        1e-13,
    ));

    let spec = QuadratureSpec::default();
    let mut measure = 0.0f64;
    for n in 3..=8 {
        let d = BallDim::<f64>::new(n)?;
        let v = sphere_zonal_integral(&d, |_| 1.0, &spec)?.value;
        measure = measure.max((v - d.omega()).abs() / d.omega());
    }
    rows.push(error_row("quadrature.sphere_measure", 0, measure, 1e-10));

    for n in dims(cfg, &[3, 4, 5]) {
        let dim = BallDim::<f64>::new(n)?;
        let x0 = Point::on_axis(n, 0, 0.5);
        let mut worst_z = 0.0f64;
        let battery: [(
            &(dyn Fn(ZonalCoord<f64>) -> f64 + Sync),
            &(dyn Fn(&Point<f64>) -> f64 + Sync),
            &[f64],
        ); 3] = [
            (&|z| z.r * z.r, &|y| y.norm_sq(), &[]),
            (&|z| (z.r * z.s).exp(), &|y| y.coords()[0].exp(), &[]),
            (
                &|z| ((z.r - 0.5).powi(2) + z.r * z.one_minus_s).sqrt().recip(),
                &|y| y.distance(&x0).recip(),
                &[0.5],
            ),
        ];
        for (i, (zonal, pointwise, focus)) in battery.iter().enumerate() {
            let det = ball_zonal_integral_focused(&dim, zonal, focus, &spec)?;
            let est = monte_carlo_ball(&dim, pointwise, &mc(cfg, 300 + i as u64))?;
            let sigma = (est.std_error.powi(2) + det.std_error.powi(2)).sqrt();
            worst_z = worst_z.max((est.value - det.value).abs() / sigma);
        }
        rows.push(Row::property(
            "quadrature.zonal_vs_monte_carlo",
            n,
            0.0,
            worst_z,
            worst_z <= 3.0,
        ));

        let f = |y: &Point<f64>| (y.coords()[0] + 0.5).powi(3);
        let a = monte_carlo_ball(&dim, f, &mc(cfg, 0))?;
        let b = monte_carlo_ball(&dim, f, &mc(cfg, 0))?;
        let same = a.value.to_bits() == b.value.to_bits()
            && a.std_error.to_bits() == b.std_error.to_bits();
        rows.push(Row::property(
            "quadrature.determinism",
            n,
            a.value,
            b.value,
            same,
        ));
    }

    // Newton potential of the 3-ball: ∫ |x-y|^{-1} dy = 2π(1 - |x|²/3)
    let d3 = BallDim::<f64>::new(3)?;
    let t = 0.5;
    let v = ball_zonal_integral_focused(
        &d3,
        |z: ZonalCoord<f64>| {
            ((z.r - t).powi(2) + 2.0 * t * z.r * z.one_minus_s)
                .sqrt()
                .recip()
        },
        &[t],
        &spec,
    )?;
    let want = 2.0 * std::f64::consts::PI * (1.0 - t * t / 3.0);
    rows.push(Row::property(
        "quadrature.newton_potential",
        3,
        want,
        v.value,
        ((v.value - want) / want).abs() <= 1e-8,
    ));
    let v = ball_zonal_integral(&d3, |r, _| r * r, &spec)?;
    let want = 4.0 * std::f64::consts::PI / 5.0;
    rows.push(Row::property(
        "quadrature.ball_moment",
        3,
        want,
        v.value,
        ((v.value - want) / want).abs() <= 1e-12,
    ));
    Ok(rows)
}

fn admissible_qs(n: usize) -> [f64; 3] {
    let qmax = n as f64 / (n as f64 - 2.0);
    [0.25, 0.5, 0.75].map(|s| 1.0 + s * (qmax - 1.0))
}

fn norms(cfg: &RunConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let gl = QuadratureSpec::default();
    let ns = dims(cfg, &[3, 4, 5]);
    for n in ns.iter().copied() {
        let dim = BallDim::<f64>::new(n)?;
        let nf = n as f64;
        let qmax = nf / (nf - 2.0);

        let mut consistency = 0.0f64;
        for i in 1..=8 {
            let ep = ExponentPair::from_q(1.0 + (qmax - 1.0) * i as f64 / 9.0)?;
            let direct = theorem1_norm(&dim, &ep)?;
            let via_i0 =
                dim.c_n() * (dim.omega() * lemma2_closed_i0(&dim, &ep)?).powf(ep.q().recip());
            consistency = consistency.max(((direct - via_i0) / direct).abs());
        }
        rows.push(error_row(
            "norms.consistency_identity",
            n,
            consistency,
            1e-10,
        ));

        let (mut profile_ratio, mut green_ratio, mut i0_err) = (0.0f64, 0.0f64, 0.0f64);
        for q in admissible_qs(n) {
            let ep = ExponentPair::from_q(q)?;
            let i0 = lemma2_profile(&dim, &ep, 0.0, &gl)?;
            i0_err = i0_err.max(((i0 - lemma2_closed_i0(&dim, &ep)?) / i0).abs());
            let g0 = green_q_integral(&dim, &ep, 0.0, &gl)?.value;
            for i in 1..64 {
                let t = 0.999 * i as f64 / 63.0;
                profile_ratio = profile_ratio.max(lemma2_profile(&dim, &ep, t, &gl)? / i0);
                if i % 4 == 0 {
                    green_ratio = green_ratio.max(green_q_integral(&dim, &ep, t, &gl)?.value / g0);
                }
            }
        }
        rows.push(error_row(
            "norms.profile_at_zero_matches_closed_form",
            n,
            i0_err,
            1e-9,
        ));
        rows.push(Row::property(
            "norms.profile_max_at_zero",
            n,
            1.0,
            profile_ratio,
            profile_ratio < 1.0 - 1e-12,
        ));
        rows.push(Row::property(
            "norms.green_q_max_at_zero",
            n,
            1.0,
            green_ratio,
            green_ratio <= 1.0 + 1e-12,
        ));

        let two_n = 1.0 / (2.0 * nf);
        let lam = lambda1(&dim)?;
        let endpoints = [
            riesz_thorin_bound(&dim, 1.0)? - two_n,
            riesz_thorin_bound(&dim, 2.0)? - 1.0 / lam,
            riesz_thorin_bound(&dim, f64::INFINITY)? - two_n,
        ];
        let worst = endpoints.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        rows.push(Row::property(
            "norms.endpoint_equality",
            n,
            0.0,
            worst,
            worst == 0.0,
        ));
        let lo = riesz_thorin_branch(&dim, RieszThorinBranch::Low, 2.0)?;
        let hi = riesz_thorin_branch(&dim, RieszThorinBranch::High, 2.0)?;
        rows.push(Row::property(
            "norms.branches_agree_at_two",
            n,
            lo,
            hi,
            ((lo - hi) / lo).abs() <= 1e-14,
        ));

        let mut last = 0.0;
        let mut increasing = true;
        let first = theorem1_norm(&dim, &ExponentPair::from_q(qmax - (qmax - 1.0) * 0.5)?)?;
        for k in 1..=12 {
            let v = theorem1_norm(
                &dim,
                &ExponentPair::from_q(qmax - (qmax - 1.0) * 0.5f64.powi(k))?,
            )?;
            increasing &= v > last;
            last = v;
        }
        rows.push(Row::property(
            "norms.blowup_at_admissibility_edge",
            n,
            first,
            last,
            increasing && last > 5.0 * first,
        ));

        // radial eigen-equation u'' + (n-1)u'/r + λu = 0 by central differences
        let phi = Phi1::new(&dim)?;
        let mut fd = Vec::new();
        for i in 1..=9 {
            let r = 0.1 * i as f64;
            let res = |h: f64| {
                let (um, u0, up) = (phi.value(r - h), phi.value(r), phi.value(r + h));
                ((up - 2.0 * u0 + um) / (h * h) + (nf - 1.0) / r * (up - um) / (2.0 * h) + lam * u0)
                    .abs()
            };
            fd.push((res(1e-2), res(5e-3), 1e-9));
        }
        let ratio = trend(&fd);
        let edge = phi.value(1.0).abs();
        rows.push(Row::property(
            "norms.eigenfunction_residual",
            n,
            0.25,
            ratio,
            ratio <= TREND_RATIO && edge <= 1e-10,
        ));

        let mut worst_ratio = 0.0f64;
        let mut ok = true;
        for p in [1.5, 2.0, 3.0, 4.0] {
            let bound = riesz_thorin_bound(&dim, p)?;
            for source in [TestSource::ConstOne, TestSource::Phi1] {
                let w = lp_lower_bound(&dim, p, source, &gl)?;
                ok &= w.value <= bound * (1.0 + 1e-9) + 3.0 * w.std_error;
                worst_ratio = worst_ratio.max(w.value / bound);
            }
        }
        rows.push(Row::property(
            "norms.witness_below_bound",
            n,
            1.0,
            worst_ratio,
            ok,
        ));
    }

    for (i, &(n, q)) in NORM_PAIRS.iter().enumerate() {
        if !ns.contains(&n) {
            continue;
        }
        let dim = BallDim::<f64>::new(n)?;
        let ep = ExponentPair::from_q(q)?;
        let closed = theorem1_norm(&dim, &ep)?;
        let reduced = green_q_integral(&dim, &ep, 0.0, &gl)?.value.powf(1.0 / q);
        rows.push(
            Row::property(
                "norms.linf_norm_reduced",
                n,
                closed,
                reduced,
                ((reduced - closed) / closed).abs() <= 1e-3,
            )
            .with_q(q),
        );
        let est = green_q_integral(&dim, &ep, 0.0, &mc(cfg, 400 + i as u64))?;
        let within = (est.value - closed.powf(q)).abs() <= 3.0 * est.std_error;
        rows.push(
            Row::property(
                "norms.linf_norm_monte_carlo",
                n,
                closed,
                est.value.powf(1.0 / q),
                within,
            )
            .with_q(q)
            .sampled(cfg.samples),
        );
        let (t_star, _) = try_sup_scan(
            |t| green_q_integral(&dim, &ep, t, &gl).map(|e| e.value),
            cfg.t_grid,
            true,
        )?;
        rows.push(
            Row::property("norms.sup_scan_argmax", n, 0.0, t_star, t_star == 0.0)
                .with_q(q)
                .at(t_star),
        );
    }

    if ns.contains(&3) {
        let d3 = BallDim::<f64>::new(3)?;
        let pi = std::f64::consts::PI;
        let v = riesz_potential_bound(&d3, 2.0 / 3.0, 2.0, 2.0, 4.0 * pi / 3.0)?;
        let rejects = riesz_potential_bound(&d3, 0.5, 1.0, 2.0, 1.0).is_err();
        rows.push(Row::property(
            "norms.riesz_potential_bound",
            3,
            2.0 * pi,
            v,
            ((v - 2.0 * pi) / (2.0 * pi)).abs() <= 1e-12 && rejects,
        ));
        let w = lp_lower_bound(&d3, 2.0, TestSource::ConstOne, &gl)?.value;
        let want = (2.0f64 / 315.0).sqrt();
        rows.push(Row::property(
            "norms.witness_const_one",
            3,
            want,
            w,
            ((w - want) / want).abs() <= 1e-9,
        ));
        let w = lp_lower_bound(&d3, 2.0, TestSource::Phi1, &gl)?.value;
        let want = 1.0 / (pi * pi);
        rows.push(Row::property(
            "norms.witness_phi1",
            3,
            want,
            w,
            ((w - want) / want).abs() <= 1e-3,
        ));
        let (t_star, _) = sup_scan(|t| 1.0 - t * t, 64, true);
        rows.push(Row::property(
            "norms.sup_scan_parabola",
            0,
            0.0,
            t_star,
            t_star == 0.0,
        ));
    }
    Ok(rows)
}

fn potential(cfg: &RunConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let gl = QuadratureSpec::default();
    for n in dims(cfg, &[3, 4, 5]) {
        let dim = BallDim::<f64>::new(n)?;
        let nf = n as f64;
        let one = SourceField::const_one();
        let coord = SourceField::coord_1();
        let phi = SourceField::phi1(&dim)?;

        // ∫ G(x, y) dy = (1 - |x|²)/(2n)
        let (mut worst_rel, mut within) = (0.0f64, true);
        for (i, t) in [0.0, 0.3, 0.6, 0.9].into_iter().enumerate() {
            let x = Point::on_axis(n, 0, t);
            let s = apply_green(&dim, &one, &x, &mc(cfg, 500 + i as u64))?;
            let want = (1.0 - t * t) / (2.0 * nf);
            worst_rel = worst_rel.max((s.value - want).abs() / want);
            within &= (s.value - want).abs() <= 3.0 * s.std_error;
        }
        rows.push(Row::property(
            "potential.green_integral_identity",
            n,
            0.0,
            worst_rel,
            within && worst_rel <= 1e-2,
        ));

        let mut r = rng(cfg, 600 + n as u64);
        let (mut eigen_ok, mut eigen_z) = (true, 0.0f64);
        for i in 0..10 {
            let x = random_point(&mut r, n, 0.9);
            let s = apply_green(&dim, &phi, &x, &mc(cfg, 700 + i))?;
            let want = phi.closed_potential(&dim, &x).expect("closed form");
            let z = (s.value - want).abs() / s.std_error;
            eigen_z = eigen_z.max(z);
            eigen_ok &= z <= 3.0;
        }
        rows.push(Row::property(
            "potential.eigen_relation",
            n,
            0.0,
            eigen_z,
            eigen_ok,
        ));

        let mut decay = Vec::new();
        for t in [0.9, 0.99, 0.999] {
            decay.push(apply_green(&dim, &one, &Point::on_axis(n, 0, t), &gl)?.value);
        }
        let decays = decay.windows(2).all(|w| w[1] < w[0] / 5.0) && decay[2] >= 0.0;
        rows.push(Row::property(
            "potential.boundary_vanishing",
            n,
            0.0,
            decay[2],
            decays,
        ));

        let mut min = f64::INFINITY;
        for (i, t) in [0.0, 0.5, 0.95].into_iter().enumerate() {
            let x = Point::on_axis(n, 1, t);
            min = min.min(apply_green(&dim, &one, &x, &mc(cfg, 800 + i as u64))?.value);
            min = min.min(apply_green(&dim, &phi, &x, &mc(cfg, 810 + i as u64))?.value);
        }
        rows.push(Row::property(
            "potential.positivity",
            n,
            0.0,
            min,
            min >= 0.0,
        ));

        // linearity with a shared sample stream
        let (alpha, beta) = (1.5, -0.75);
        let x = Point::on_axis(n, 0, 0.4);
        let spec = mc(cfg, 900);
        let combo = SourceField::custom(move |y: &Point<f64>| alpha + beta * y.coords()[0]);
        let lhs = apply_green(&dim, &combo, &x, &spec)?.value;
        let rhs = alpha * apply_green(&dim, &one, &x, &spec)?.value
            + beta * apply_green(&dim, &coord, &x, &spec)?.value;
        let lin = (lhs - rhs).abs() / lhs.abs();
        rows.push(Row::property(
            "potential.linearity",
            n,
            rhs,
            lhs,
            lin <= 1e-12,
        ));

        // Δ_h 𝒢[g] + g → 0 at second order (deterministic potentials)
        let x = Point::on_axis(n, 0, 0.3);
        let mut pairs = Vec::new();
        for g in [&one, &coord, &phi] {
            let coarse = laplacian_residual(&dim, g, &x, 2e-2, &gl)?.value.abs();
            let fine = laplacian_residual(&dim, g, &x, 1e-2, &gl)?.value.abs();
            pairs.push((coarse, fine, 1e-6));
        }
        let ratio = trend(&pairs);
        let worst = pairs.iter().fold(0.0f64, |m, p| m.max(p.1));
        rows.push(Row::property(
            "potential.laplacian_residual_trend",
            n,
            0.25,
            ratio,
            ratio <= TREND_RATIO && worst <= 1e-3,
        ));

        let mut z_worst = 0.0f64;
        for (i, t) in [0.2, 0.5, 0.8].into_iter().enumerate() {
            let x = Point::on_axis(n, 0, t);
            let s = apply_green(&dim, &coord, &x, &mc(cfg, 1000 + i as u64))?;
            let want = coord.closed_potential(&dim, &x).expect("closed form");
            z_worst = z_worst.max((s.value - want).abs() / s.std_error);
        }
        rows.push(Row::property(
            "potential.coord_1_closed_form",
            n,
            0.0,
            z_worst,
            z_worst <= 3.0,
        ));
        let mc_res = laplacian_residual(&dim, &coord, &x, 2e-2, &mc(cfg, 1100))?;
        rows.push(Row::property(
            "potential.laplacian_residual_monte_carlo",
            n,
            0.0,
            mc_res.value,
            mc_res.value.abs() <= 3.0 * mc_res.std_error + 1e-3,
        ));
    }
    Ok(rows)
}
