//! Independent reference implementations used as test oracles. None of them
//! share code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` by the Lanczos approximation (g = 7).
pub fn lanczos_ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - lanczos_ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn lanczos_beta(a: f64, b: f64) -> f64 {
    (lanczos_ln_gamma(a) + lanczos_ln_gamma(b) - lanczos_ln_gamma(a + b)).exp()
}

/// `∫₀¹ f(s, 1-s) ds` by double-exponential (tanh-sinh) quadrature; `1 - s`
/// is passed separately so endpoint singularities keep full precision.
pub fn tanh_sinh<F: Fn(f64, f64) -> f64>(f: F) -> f64 {
    let h = 1.0 / 64.0;
    let mut sum = 0.0;
    let steps = (5.0 / h) as i64;
    for k in -steps..=steps {
        let u = k as f64 * h;
        let v = 0.5 * PI * u.sinh();
        let s = 1.0 / (1.0 + (-2.0 * v).exp());
        let one_minus = 1.0 / (1.0 + (2.0 * v).exp());
        if s == 0.0 || one_minus == 0.0 {
            continue;
        }
        let w = 0.25 * PI * u.cosh() / v.cosh().powi(2);
        sum += w * f(s, one_minus);
    }
    sum * h
}

/// `₂F₁(a, b; c; t)` through Euler's integral, valid for `c > b > 0`, `t < 1`.
pub fn hyp2f1_euler_integral(a: f64, b: f64, c: f64, t: f64) -> f64 {
    let i = tanh_sinh(|s, one_minus| {
        s.powf(b - 1.0) * one_minus.powf(c - b - 1.0) * (1.0 - t * s).powf(-a)
    });
    i / lanczos_beta(b, c - b)
}

/// `d/dt ₂F₁` from the termwise derivative of the power series, for `|t| <= 0.9`.
pub fn hyp2f1_series_derivative(a: f64, b: f64, c: f64, t: f64) -> f64 {
    // coefficient of t^{k-1} is k·(a)_k(b)_k/((c)_k k!)
    let mut coeff = 1.0;
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..20_000 {
        let km = (k - 1) as f64;
        coeff *= (a + km) * (b + km) / ((c + km) * k as f64);
        let term = k as f64 * coeff * power;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k > 10 {
            break;
        }
        power *= t;
    }
    sum
}

/// `J_α(t)` by its power series; accurate for `t` up to about 10.
pub fn bessel_series(alpha: f64, t: f64) -> f64 {
    let half = 0.5 * t;
    let mut term = (alpha * half.ln() - lanczos_ln_gamma(alpha + 1.0)).exp();
    let mut sum = term;
    for k in 1..200 {
        let k = k as f64;
        term *= -half * half / (k * (k + alpha));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// First positive zero of `J_α` by scanning for a sign change of the series
/// and bisecting.
pub fn bessel_zero_bisection(alpha: f64) -> f64 {
    let mut lo = alpha.max(0.0) + 0.05;
    let mut hi = lo;
    while bessel_series(alpha, hi).signum() == bessel_series(alpha, lo).signum() {
        lo = hi;
        hi += 0.05;
    }
    let f_lo = bessel_series(alpha, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_series(alpha, mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `ω_{n-1}` by the closed form `2π^{n/2}/Γ(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / lanczos_ln_gamma(n as f64 / 2.0).exp()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
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

/// Point of the ball in `n` dimensions from raw coordinates in `[-1, 1]`,
/// pulled radially inside radius `max_radius`.
pub fn squash(raw: &[f64], max_radius: f64) -> Vec<f64> {
    let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return raw.to_vec();
    }
    let target = max_radius * (norm / (raw.len() as f64).sqrt()).min(1.0);
    raw.iter().map(|c| c * target / norm).collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
