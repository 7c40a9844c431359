use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hard cap on the number of series terms before reporting non-convergence.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Arguments of `₂F₁(a, b; c; t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub t: T,
}

impl<T: Real> Hyp2F1Params<T> {
    pub fn new(a: T, b: T, c: T, t: T) -> Self {
        Self { a, b, c, t }
    }

    fn validate(&self) -> Result<()> {
        if is_non_positive_integer(self.c) {
            return Err(Error::Domain(format!(
                "c = {} is a pole of the hypergeometric series",
                self.c
            )));
        }
        if !(self.t < T::one()) {
            return Err(Error::Domain(format!(
                "hypergeometric argument must satisfy t < 1, got {}",
                self.t
            )));
        }
        Ok(())
    }
}

fn is_non_positive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// Plain power series `Σ (a)_k (b)_k / ((c)_k k!) t^k` with a tail-bound stop.
fn series<T: Real>(a: T, b: T, c: T, t: T) -> Result<T> {
    let eps = T::epsilon();
    let abs_t = t.abs();
    let mut sum = T::one();
    let mut term = T::one();
    for k in 0..MAX_SERIES_TERMS {
        let kf = T::from_count(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * t;
        sum = sum + term;
        if term == T::zero() {
            return Ok(sum);
        }
        let k1 = kf + T::one();
        let next = ((a + k1) * (b + k1) / ((c + k1) * (k1 + T::one())) * t).abs();
        let rate = next.max(abs_t);
        if rate < T::one() && term.abs() * rate / (T::one() - rate) <= eps * sum.abs() {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_SERIES_TERMS,
    })
}

/// Evaluation for `0 <= t < 1`: the Euler transformation is used near 1 when
/// it turns algebraically growing coefficients into decaying ones.
fn eval_nonnegative<T: Real>(a: T, b: T, c: T, t: T) -> Result<T> {
    let s = c - a - b;
    let terminating = is_non_positive_integer(a) || is_non_positive_integer(b);
    if t > T::lit(0.5) && s < T::zero() && !terminating {
        Ok((T::one() - t).powf(s) * series(c - a, c - b, c, t)?)
    } else {
        series(a, b, c, t)
    }
}

/// Gauss hypergeometric function `₂F₁(a, b; c; t)` for real `t < 1`.
///
/// Zones: the power series for `|t| <= 0.5`, the Pfaff transformation
/// `F(a,b;c;t) = (1-t)^{-a} F(a, c-b; c; t/(t-1))` for `t < -0.5`, and the
/// Euler transformation `F(a,b;c;t) = (1-t)^{c-a-b} F(c-a, c-b; c; t)` for
/// `t > 0.5` whenever `c - a - b < 0`.
pub fn hyp2f1<T: Real>(params: &Hyp2F1Params<T>) -> Result<T> {
    params.validate()?;
    let Hyp2F1Params { a, b, c, t } = *params;
    if t == T::zero() {
        return Ok(T::one());
    }
    let terminating = is_non_positive_integer(a) || is_non_positive_integer(b);
    if terminating {
        return series(a, b, c, t);
    }
    if t < -T::lit(0.5) {
        let w = t / (t - T::one());
        let scale = (T::one() - t).powf(-a);
        return Ok(scale * eval_nonnegative(a, c - b, c, w)?);
    }
    if t < T::zero() {
        return series(a, b, c, t);
    }
    eval_nonnegative(a, b, c, t)
}

/// `d/dt ₂F₁(a, b; c; t) = (ab/c) ₂F₁(a+1, b+1; c+1; t)`.
pub fn hyp2f1_derivative<T: Real>(params: &Hyp2F1Params<T>) -> Result<T> {
    params.validate()?;
    let Hyp2F1Params { a, b, c, t } = *params;
    let shifted = Hyp2F1Params::new(a + T::one(), b + T::one(), c + T::one(), t);
    Ok(a * b / c * hyp2f1(&shifted)?)
}
