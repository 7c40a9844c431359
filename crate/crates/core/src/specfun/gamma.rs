use crate::error::{Error, Result};
use crate::scalar::Real;

/// Arguments at or above this value go straight to the Stirling series.
const STIRLING_THRESHOLD: f64 = 15.0;

/// `B_{2k} / (2k (2k - 1))` for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let ln_sqrt_2pi = T::lit(0.918_938_533_204_672_8);
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut corr = T::zero();
    let mut pow = inv;
    for &c in STIRLING_COEFFS.iter() {
        corr = corr + T::lit(c) * pow;
        pow = pow * inv2;
    }
    (x - half) * x.ln() - x + ln_sqrt_2pi + corr
}

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Uses the Stirling series for `x >= 15` and the upward recurrence
/// `ln Γ(x) = ln Γ(x + m) - ln(x (x+1) ... (x+m-1))` below that.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x == T::one() || x == T::lit(2.0) {
        return Ok(T::zero());
    }
    let threshold = T::lit(STIRLING_THRESHOLD);
    if x >= threshold {
        return Ok(stirling(x));
    }
    let mut shifted = x;
    let mut product = T::one();
    while shifted < threshold {
        product = product * shifted;
        shifted = shifted + T::one();
    }
    Ok(stirling(shifted) - product.ln())
}

/// Gamma function for `x > 0`, via [`ln_gamma`].
pub fn gamma<T: Real>(x: T) -> Result<T> {
    ln_gamma(x).map(T::exp)
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Real>(a: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (a + T::from_count(i)))
}

pub fn ln_beta<T: Real>(x: T, y: T) -> Result<T> {
    if !(x > T::zero() && y > T::zero()) {
        return Err(Error::Domain(format!(
            "beta requires positive arguments, got ({x}, {y})"
        )));
    }
    Ok(ln_gamma(x)? + ln_gamma(y)? - ln_gamma(x + y)?)
}

/// Euler beta function `Γ(x)Γ(y)/Γ(x+y)` for positive arguments.
pub fn beta<T: Real>(x: T, y: T) -> Result<T> {
    ln_beta(x, y).map(T::exp)
}
