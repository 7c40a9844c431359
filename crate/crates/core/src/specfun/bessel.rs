use crate::error::{Error, Result};
use crate::scalar::Real;

use super::gamma::ln_gamma;

/// Above this argument the power series loses too many digits to cancellation
/// and the backward recurrence takes over.
const SERIES_LIMIT: f64 = 10.0;

const MAX_SERIES_TERMS: usize = 500;

/// Grid step of the sign-change scan in [`bessel_first_zero`].
const ZERO_SCAN_STEP: f64 = 0.1;
/// The scan gives up past `alpha + ZERO_SCAN_WINDOW`.
const ZERO_SCAN_WINDOW: f64 = 20.0;

fn check_domain<T: Real>(alpha: T, t: T) -> Result<()> {
    if !(alpha >= T::zero()) || !(t >= T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel J requires alpha >= 0 and t >= 0, got alpha={alpha}, t={t}"
        )));
    }
    Ok(())
}

/// `Σ_m (-1)^m (t/2)^{2m} / (m! Γ(m+α+1))`, i.e. `J_α(t) / (t/2)^α`.
fn reduced_series<T: Real>(alpha: T, t: T) -> Result<T> {
    let eps = T::epsilon();
    let x2 = (t * T::lit(0.5)).powi(2);
    let mut term = (-ln_gamma(alpha + T::one())?).exp();
    let mut sum = term;
    for m in 1..MAX_SERIES_TERMS {
        let mf = T::from_count(m);
        term = -term * x2 / (mf * (mf + alpha));
        sum = sum + term;
        if mf * mf > x2 && term.abs() <= eps * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_SERIES_TERMS,
    })
}

/// Miller backward recurrence normalised with the Neumann sum
/// `(t/2)^α = Σ_k w_k J_{α+2k}(t)`, `w_0 = Γ(α+1)`,
/// `w_k = (α+2k) Γ(α+k) / k!`.
fn backward_recurrence<T: Real>(alpha: T, t: T) -> Result<T> {
    let tf = t.to_f64_lossy();
    let start = (tf + 20.0 + 2.0 * (40.0 * tf).sqrt()).ceil() as usize;
    let start = start + start % 2;
    let big = T::max_value().sqrt();
    let mut values = vec![T::zero(); start + 2];
    values[start] = T::min_positive_value().sqrt();
    for k in (1..=start).rev() {
        let nu = alpha + T::from_count(k);
        values[k - 1] = T::lit(2.0) * nu / t * values[k] - values[k + 1];
        if values[k - 1].abs() > big {
            for v in values.iter_mut().skip(k - 1) {
                *v = *v / big;
            }
        }
    }
    let mut norm = (ln_gamma(alpha + T::one())?).exp() * values[0];
    let mut k = 1;
    while 2 * k <= start {
        let kf = T::from_count(k);
        let ln_w =
            (alpha + T::lit(2.0) * kf).ln() + ln_gamma(alpha + kf)? - ln_gamma(kf + T::one())?;
        norm = norm + ln_w.exp() * values[2 * k];
        k += 1;
    }
    let scale = (alpha * (t * T::lit(0.5)).ln()).exp();
    Ok(values[0] * scale / norm)
}

/// Bessel function of the first kind `J_α(t)` for `α >= 0`, `t >= 0`.
///
/// The defining power series is summed directly for `t <= 10`; beyond that
/// a normalised backward recurrence is used.
pub fn bessel_j<T: Real>(alpha: T, t: T) -> Result<T> {
    check_domain(alpha, t)?;
    if t == T::zero() {
        return Ok(if alpha == T::zero() {
            T::one()
        } else {
            T::zero()
        });
    }
    if t <= T::lit(SERIES_LIMIT) {
        let scale = (alpha * (t * T::lit(0.5)).ln()).exp();
        return Ok(scale * reduced_series(alpha, t)?);
    }
    backward_recurrence(alpha, t)
}

/// `J_α(t) / t^α`, continuous at `t = 0` where it equals `1 / (2^α Γ(α+1))`.
pub fn bessel_j_over_power<T: Real>(alpha: T, t: T) -> Result<T> {
    check_domain(alpha, t)?;
    if t <= T::lit(SERIES_LIMIT) {
        let scale = (-alpha * T::LN_2()).exp();
        return Ok(scale * reduced_series(alpha, t)?);
    }
    Ok(backward_recurrence(alpha, t)? / t.powf(alpha))
}

/// Smallest positive zero of `J_α`.
///
/// `J_α` has no zero in `(0, α]`, so the scan for a sign change starts at
/// `α` and walks forward in steps of 0.1; the bracket is then bisected to
/// machine precision and polished with a Newton step.
pub fn bessel_first_zero<T: Real>(alpha: T) -> Result<T> {
    if !(alpha >= T::zero()) {
        return Err(Error::Domain(format!(
            "bessel_first_zero requires alpha >= 0, got {alpha}"
        )));
    }
    let step = T::lit(ZERO_SCAN_STEP);
    let limit = alpha + T::lit(ZERO_SCAN_WINDOW);
    let mut lo = alpha.max(step);
    let mut f_lo = bessel_j(alpha, lo)?;
    let mut hi = lo + step;
    let mut f_hi = bessel_j(alpha, hi)?;
    while f_lo.signum() == f_hi.signum() && f_hi != T::zero() {
        if hi > limit {
            return Err(Error::SearchFailure {
                alpha: alpha.to_f64_lossy(),
                limit: limit.to_f64_lossy(),
            });
        }
        lo = hi;
        f_lo = f_hi;
        hi = hi + step;
        f_hi = bessel_j(alpha, hi)?;
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = bessel_j(alpha, mid)?;
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    // J'_α = (α/t) J_α - J_{α+1}
    let root = (lo + hi) * T::lit(0.5);
    let value = bessel_j(alpha, root)?;
    let slope = alpha / root * value - bessel_j(alpha + T::one(), root)?;
    let polished = root - value / slope;
    if polished >= lo && polished <= hi {
        Ok(polished)
    } else {
        Ok(root)
    }
}
