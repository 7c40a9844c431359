use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{IntegralEstimate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::geometry::{BallDim, Point};
use crate::scalar::Real;

pub type McRng = ChaCha8Rng;

/// Samples per RNG substream. Block `b` draws from stream `b` of the seeded
/// generator, and block statistics are merged in block order.
pub const MC_BLOCK: usize = 4096;

/// Consecutive non-finite draws tolerated before giving up on a sample.
const MAX_RESAMPLE: usize = 64;

#[derive(Clone, Copy)]
struct Moments<T> {
    count: usize,
    mean: T,
    m2: T,
}

impl<T: Real> Moments<T> {
    fn empty() -> Self {
        Self {
            count: 0,
            mean: T::zero(),
            m2: T::zero(),
        }
    }

    fn push(&mut self, x: T) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean = self.mean + delta / T::from_count(self.count);
        self.m2 = self.m2 + delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let (na, nb, n) = (
            T::from_count(self.count),
            T::from_count(other.count),
            T::from_count(count),
        );
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }
}

/// Mean of `sample` over `spec.mc_samples` draws with its standard error.
///
/// `sample` returns `None` (or a non-finite value) for a draw that hit a
/// singular set; such draws are repeated, not counted as zero.
pub fn mc_mean<T, F>(spec: &QuadratureSpec, sample: F) -> Result<IntegralEstimate<T>>
where
    T: Real,
    F: Fn(&mut McRng) -> Option<T> + Sync,
{
    let total = spec.mc_samples;
    if total < 2 {
        return Err(Error::InvalidParameter(
            "Monte Carlo needs at least 2 samples".into(),
        ));
    }
    let blocks = total.div_ceil(MC_BLOCK);
    let per_block: Vec<Result<Moments<T>>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = McRng::seed_from_u64(spec.seed);
            rng.set_stream(b as u64);
            let count = MC_BLOCK.min(total - b * MC_BLOCK);
            let mut m = Moments::empty();
            for _ in 0..count {
                let mut tries = 0;
                let value = loop {
                    match sample(&mut rng) {
                        Some(v) if v.is_finite() => break v,
                        _ => {
                            tries += 1;
                            if tries >= MAX_RESAMPLE {
                                return Err(Error::Domain(
                                    "Monte Carlo integrand is non-finite on a set of positive measure".into(),
                                ));
                            }
                        }
                    }
                };
                m.push(value);
            }
            Ok(m)
        })
        .collect();
    let mut acc = Moments::empty();
    for m in per_block {
        acc = acc.merge(m?);
    }
    let n = T::from_count(acc.count);
    let variance = acc.m2 / (n - T::one());
    Ok(IntegralEstimate {
        value: acc.mean,
        std_error: (variance / n).max(T::zero()).sqrt(),
        nodes_or_samples: acc.count,
    })
}

/// Uniform direction on `S^{n-1}` from a normalised Gaussian vector.
pub fn sample_direction<T: Real>(rng: &mut McRng, n: usize) -> Vec<T> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| T::lit(x / norm)).collect();
        }
    }
}

/// `∫_{Bⁿ} f(y) dy` from uniform samples: Gaussian direction times radius `u^{1/n}`.
pub fn monte_carlo_ball<T, F>(
    dim: &BallDim<T>,
    f: F,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>>
where
    T: Real,
    F: Fn(&Point<T>) -> T + Sync,
{
    spec.validate()?;
    let n = dim.n();
    let inv_n = T::from_count(n).recip();
    let volume = dim.volume();
    let mut est = mc_mean(spec, |rng| {
        let dir = sample_direction::<T>(rng, n);
        let r = T::lit(rng.random::<f64>()).powf(inv_n);
        let y = Point::new(dir.into_iter().map(|c| c * r).collect());
        Some(f(&y) * volume)
    })?;
    est.nodes_or_samples = spec.mc_samples;
    Ok(est)
}

/// Radial law of the star-shaped sampler along each ray from the centre.
///
/// `a` gives the density `∝ ρ^{a-1}` on `[0, R]`, where `R` is the distance to
/// the sphere along the ray. With `tail = Some(ρ₀)` half of the draws are
/// log-uniform on `[ρ₀, R]` instead, which keeps the weights of integrands
/// decaying like `1/ρ` bounded by a logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarLaw<T> {
    pub a: T,
    pub tail: Option<T>,
}

impl<T: Real> StarLaw<T> {
    pub fn power(a: T) -> Self {
        Self { a, tail: None }
    }

    /// Power law mixed with a log-uniform tail starting at half the distance
    /// from `center` to the sphere.
    pub fn with_boundary_tail(a: T, center: &Point<T>) -> Self {
        Self {
            a,
            tail: Some((T::one() - center.norm()) * T::lit(0.5)),
        }
    }
}

/// One draw of the star-shaped sampler used by [`monte_carlo_star`].
pub struct StarSample<T> {
    pub point: Point<T>,
    /// Distance from the centre.
    pub rho: T,
    /// Reciprocal sampling density at `point`.
    pub weight: T,
}

/// Maps a direction `dir` and uniforms `pick, u ∈ [0,1)` to a point on the ray
/// from `center`; `pick` selects the mixture component of `law`.
pub fn star_point<T: Real>(
    dim: &BallDim<T>,
    center: &Point<T>,
    dir: &[T],
    pick: T,
    u: T,
    law: &StarLaw<T>,
) -> StarSample<T> {
    let cd: T = center.coords().iter().zip(dir).map(|(&c, &d)| c * d).sum();
    let reach = -cd
        + (cd * cd + T::one() - center.norm_sq())
            .max(T::zero())
            .sqrt();
    let a = law.a;
    let half = T::lit(0.5);
    let (rho, density) = match law.tail {
        Some(rho0) if rho0 > T::zero() && rho0 < reach => {
            let span = (reach / rho0).ln();
            let rho = if pick < half {
                reach * u.powf(a.recip())
            } else {
                rho0 * (span * u).exp()
            };
            let mut density = half * a * rho.powf(a - T::one()) / reach.powf(a);
            if rho >= rho0 {
                density = density + half / (rho * span);
            }
            (rho, density)
        }
        _ => {
            let rho = reach * u.powf(a.recip());
            (rho, a * rho.powf(a - T::one()) / reach.powf(a))
        }
    };
    let point = Point::new(
        center
            .coords()
            .iter()
            .zip(dir)
            .map(|(&c, &d)| c + rho * d)
            .collect(),
    );
    let weight = dim.omega() * rho.powi(dim.n() as i32 - 1) / density;
    StarSample { point, rho, weight }
}

/// `∫_{Bⁿ} f(y) dy` by sampling rays from `center` with the radial law `law`.
///
/// An integrand behaving like `|y - center|^{a-n}` becomes bounded under the
/// power law, so singular kernels keep a finite variance. With `center = 0`
/// and `StarLaw::power(n)` this is uniform sampling.
pub fn monte_carlo_star<T, F>(
    dim: &BallDim<T>,
    center: &Point<T>,
    law: &StarLaw<T>,
    f: F,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>>
where
    T: Real,
    F: Fn(&Point<T>) -> T + Sync,
{
    spec.validate()?;
    if center.dim() != dim.n() {
        return Err(Error::DimensionMismatch {
            expected: dim.n(),
            got: center.dim(),
        });
    }
    if !center.is_interior() {
        return Err(Error::Domain("star sampler centre must be interior".into()));
    }
    if !(law.a > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "radial exponent must be positive, got {}",
            law.a
        )));
    }
    let n = dim.n();
    mc_mean(spec, |rng| {
        let dir = sample_direction::<T>(rng, n);
        let pick = T::lit(rng.random::<f64>());
        let u = T::lit(rng.random::<f64>());
        let s = star_point(dim, center, &dir, pick, u, law);
        Some(f(&s.point) * s.weight)
    })
}
