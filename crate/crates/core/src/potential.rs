//! The Green operator applied to concrete sources, the Dirichlet solution
//! `u = -𝒢[g]` of `Δu = g`, and finite-difference checks of `Δ𝒢[g] = -g`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{green, green_zonal_precise, BallDim, Point};
use crate::norms::lambda1;
use crate::quadrature::{
    ball_zonal_integral_focused, ball_zonal_integral_separable, mc_mean, monte_carlo_star,
    sample_direction, star_point, QuadratureSpec, StarLaw, ZonalCoord,
};
use crate::scalar::Real;
use crate::specfun::bessel_j_over_power;

/// Admissible finite-difference steps for [`laplacian_residual`].
pub const STENCIL_H_RANGE: (f64, f64) = (1e-3, 5e-2);

/// Radial Dirichlet eigenfunction `φ₁(r) = r^{-α} J_α(κr)` with `α = n/2 - 1`,
/// `κ = √λ₁`. Unnormalised; vanishes at `r = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi1<T> {
    alpha: T,
    kappa: T,
    lambda: T,
    scale: T,
}

impl<T: Real> Phi1<T> {
    pub fn new(dim: &BallDim<T>) -> Result<Self> {
        let lambda = lambda1(dim)?;
        let alpha = dim.nf() * T::lit(0.5) - T::one();
        Ok(Self {
            alpha,
            kappa: lambda.sqrt(),
            lambda,
            scale: lambda.sqrt().powf(alpha),
        })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn value(&self, r: T) -> T {
        self.scale * bessel_j_over_power(self.alpha, self.kappa * r).expect("order is positive")
    }
}

/// `φ₁(r)`, see [`Phi1`]; the value at `r = 0` is the removable limit.
pub fn eigenfunction_phi1<T: Real>(dim: &BallDim<T>, r: T) -> Result<T> {
    if !(r >= T::zero() && r <= T::one()) {
        return Err(Error::Domain(format!("radius must lie in [0, 1], got {r}")));
    }
    Ok(Phi1::new(dim)?.value(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    ConstOne,
    Coord1,
    Phi1,
    Custom,
}

impl SourceKind {
    pub fn label(&self) -> &'static str {
        match self {
            SourceKind::ConstOne => "const_one",
            SourceKind::Coord1 => "coord_1",
            SourceKind::Phi1 => "phi1",
            SourceKind::Custom => "custom",
        }
    }
}

type Eval<T> = Arc<dyn Fn(&Point<T>) -> T + Send + Sync>;

/// A source term `g` on the ball.
#[derive(Clone)]
pub struct SourceField<T> {
    kind: SourceKind,
    phi: Option<Phi1<T>>,
    custom: Option<Eval<T>>,
}

impl<T> fmt::Debug for SourceField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SourceField")
            .field("kind", &self.kind)
            .finish()
    }
}

impl<T: Real> SourceField<T> {
    /// `g ≡ 1`.
    pub fn const_one() -> Self {
        Self {
            kind: SourceKind::ConstOne,
            phi: None,
            custom: None,
        }
    }

    /// `g(y) = y₁`.
    pub fn coord_1() -> Self {
        Self {
            kind: SourceKind::Coord1,
            phi: None,
            custom: None,
        }
    }

    /// `g = φ₁`, the first Dirichlet eigenfunction.
    pub fn phi1(dim: &BallDim<T>) -> Result<Self> {
        Ok(Self {
            kind: SourceKind::Phi1,
            phi: Some(Phi1::new(dim)?),
            custom: None,
        })
    }

    /// Arbitrary pointwise source. Only the Monte Carlo route can integrate it.
    pub fn custom<F: Fn(&Point<T>) -> T + Send + Sync + 'static>(f: F) -> Self {
        Self {
            kind: SourceKind::Custom,
            phi: None,
            custom: Some(Arc::new(f)),
        }
    }

    pub fn from_kind(dim: &BallDim<T>, kind: SourceKind) -> Result<Self> {
        match kind {
            SourceKind::ConstOne => Ok(Self::const_one()),
            SourceKind::Coord1 => Ok(Self::coord_1()),
            SourceKind::Phi1 => Self::phi1(dim),
            SourceKind::Custom => Err(Error::InvalidParameter(
                "custom sources need a closure".into(),
            )),
        }
    }

    pub fn kind(&self) -> SourceKind {
        self.kind
    }

    pub fn eval(&self, y: &Point<T>) -> T {
        match self.kind {
            SourceKind::ConstOne => T::one(),
            SourceKind::Coord1 => y.coords()[0],
            SourceKind::Phi1 => self.phi.as_ref().expect("phi1 data").value(y.norm()),
            SourceKind::Custom => (self.custom.as_ref().expect("custom closure"))(y),
        }
    }

    /// Closed form of `𝒢[g](x)` where one is known:
    /// `(1-|x|²)/(2n)`, `(1-|x|²) x₁/(2n+4)` and `φ₁(x)/λ₁`.
    pub fn closed_potential(&self, dim: &BallDim<T>, x: &Point<T>) -> Option<T> {
        let n = dim.nf();
        let two = T::lit(2.0);
        match self.kind {
            SourceKind::ConstOne => Some((T::one() - x.norm_sq()) / (two * n)),
            SourceKind::Coord1 => {
                Some((T::one() - x.norm_sq()) * x.coords()[0] / (two * n + T::lit(4.0)))
            }
            SourceKind::Phi1 => {
                let phi = self.phi.as_ref().expect("phi1 data");
                Some(phi.value(x.norm()) / phi.lambda())
            }
            SourceKind::Custom => None,
        }
    }
}

/// Value of a field at a point, with a standard error (zero for converged
/// deterministic quadrature).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample<T> {
    pub point: Point<T>,
    pub value: T,
    pub std_error: T,
}

fn check_interior<T: Real>(dim: &BallDim<T>, x: &Point<T>) -> Result<()> {
    dim.check(x)?;
    if !x.is_interior() {
        return Err(Error::Domain(format!(
            "evaluation point must be interior, |x| = {}",
            x.norm()
        )));
    }
    Ok(())
}

/// `𝒢[g](x) = ∫_{Bⁿ} G(x,y) g(y) dy`.
///
/// Monte Carlo specs sample rays from `x` with radial density `∝ ρ`, which
/// cancels the `|x-y|^{2-n}` singularity, mixed with a log-uniform tail for
/// the `1/ρ` decay of the kernel when `x` is near the sphere. Gauss–Legendre specs use zonal
/// quadrature about the axis through `x`, which needs a radial source or
/// `coord_1`; a custom source is reported as [`Error::NotZonal`].
pub fn apply_green<T: Real>(
    dim: &BallDim<T>,
    g: &SourceField<T>,
    x: &Point<T>,
    spec: &QuadratureSpec,
) -> Result<FieldSample<T>> {
    check_interior(dim, x)?;
    spec.validate()?;
    let est = if spec.is_monte_carlo() {
        monte_carlo_star(
            dim,
            x,
            &StarLaw::with_boundary_tail(T::lit(2.0), x),
            |y| match green(dim, x, y) {
                Ok(k) => k * g.eval(y),
                Err(_) => T::nan(),
            },
            spec,
        )?
    } else {
        let t = x.norm();
        let kernel = |z: &ZonalCoord<T>| green_zonal_precise(dim, t, z.r, z.one_minus_s);
        match g.kind {
            SourceKind::ConstOne => ball_zonal_integral_focused(dim, |z| kernel(&z), &[t], spec)?,
            SourceKind::Phi1 => {
                let phi = g.phi.as_ref().expect("phi1 data");
                ball_zonal_integral_separable(dim, |r| phi.value(r), |z| kernel(&z), &[t], spec)?
            }
            SourceKind::Coord1 => {
                if t == T::zero() {
                    return Ok(FieldSample {
                        point: x.clone(),
                        value: T::zero(),
                        std_error: T::zero(),
                    });
                }
                // 𝒢 commutes with rotations, so 𝒢[y₁](x) = (x₁/|x|)·𝒢[⟨y, x/|x|⟩](x).
                let mut est =
                    ball_zonal_integral_focused(dim, |z| kernel(&z) * z.r * z.s, &[t], spec)?;
                let cos = x.coords()[0] / t;
                est.value = est.value * cos;
                est.std_error = est.std_error * cos.abs();
                est
            }
            SourceKind::Custom => return Err(Error::NotZonal),
        }
    };
    Ok(FieldSample {
        point: x.clone(),
        value: est.value,
        std_error: est.std_error,
    })
}

fn stencil<T: Real>(x: &Point<T>, h: T) -> Vec<Point<T>> {
    let n = x.dim();
    let mut pts = Vec::with_capacity(2 * n + 1);
    pts.push(x.clone());
    for i in 0..n {
        for sign in [T::one(), -T::one()] {
            let mut c = x.coords().to_vec();
            c[i] = c[i] + sign * h;
            pts.push(Point::new(c));
        }
    }
    pts
}

fn check_stencil<T: Real>(dim: &BallDim<T>, x: &Point<T>, h: T) -> Result<()> {
    check_interior(dim, x)?;
    let (lo, hi) = STENCIL_H_RANGE;
    if !(h >= T::lit(lo) && h <= T::lit(hi)) {
        return Err(Error::InvalidParameter(format!(
            "stencil step must lie in [{lo}, {hi}], got {h}"
        )));
    }
    if !(x.norm() + T::lit(2.0) * h < T::one()) {
        return Err(Error::Domain(
            "stencil must stay inside the ball: need |x| + 2h < 1".into(),
        ));
    }
    Ok(())
}

/// `Δ_h w(x) + g(x)` for a potential `w` given pointwise, with the
/// `(2n+1)`-point stencil `Δ_h w = h^{-2} Σᵢ (w(x+heᵢ) + w(x-heᵢ) - 2w(x))`.
///
/// For `w = 𝒢[g]` this is `O(h²)`.
pub fn laplacian_residual_with<T: Real, W: FnMut(&Point<T>) -> Result<T>>(
    dim: &BallDim<T>,
    mut w: W,
    g: &SourceField<T>,
    x: &Point<T>,
    h: T,
) -> Result<T> {
    check_stencil(dim, x, h)?;
    let pts = stencil(x, h);
    let centre = w(&pts[0])?;
    let mut acc = T::zero();
    for p in &pts[1..] {
        acc = acc + (w(p)? - centre);
    }
    Ok(acc / (h * h) + g.eval(x))
}

/// `Δ_h 𝒢[g](x) + g(x)` with `𝒢[g]` from [`apply_green`].
///
/// With a Monte Carlo spec all `2n+1` stencil points share each random ray
/// (common random numbers) and the stencil combination is averaged per draw,
/// so the reported standard error is that of the residual itself.
pub fn laplacian_residual<T: Real>(
    dim: &BallDim<T>,
    g: &SourceField<T>,
    x: &Point<T>,
    h: T,
    spec: &QuadratureSpec,
) -> Result<FieldSample<T>> {
    check_stencil(dim, x, h)?;
    spec.validate()?;
    if !spec.is_monte_carlo() {
        let value =
            laplacian_residual_with(dim, |p| Ok(apply_green(dim, g, p, spec)?.value), g, x, h)?;
        return Ok(FieldSample {
            point: x.clone(),
            value,
            std_error: T::zero(),
        });
    }
    let pts = stencil(x, h);
    let n = dim.n();
    let laws: Vec<StarLaw<T>> = pts
        .iter()
        .map(|c| StarLaw::with_boundary_tail(T::lit(2.0), c))
        .collect();
    let inv_h2 = (h * h).recip();
    let est = mc_mean(spec, |rng| {
        let dir = sample_direction::<T>(rng, n);
        let pick = T::lit(rng.random::<f64>());
        let u = T::lit(rng.random::<f64>());
        let mut vals = Vec::with_capacity(pts.len());
        for (c, law) in pts.iter().zip(&laws) {
            let s = star_point(dim, c, &dir, pick, u, law);
            let k = green(dim, c, &s.point).ok()?;
            vals.push(k * g.eval(&s.point) * s.weight);
        }
        let centre = vals[0];
        Some(
            vals[1..]
                .iter()
                .fold(T::zero(), |acc, &v| acc + (v - centre))
                * inv_h2,
        )
    })?;
    Ok(FieldSample {
        point: x.clone(),
        value: est.value + g.eval(x),
        std_error: est.std_error,
    })
}

/// Seed of the independent Monte Carlo stream used for point `index` of a grid.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 finaliser
    let mut z = seed.wrapping_add(
        (index as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Solution `u = -𝒢[g]` of `Δu = g`, `u|_{∂B} = 0`, at each point.
///
/// Monte Carlo specs give point `i` the seed [`point_seed`]`(seed, i)`.
pub fn solve_on_grid<T: Real>(
    dim: &BallDim<T>,
    g: &SourceField<T>,
    points: &[Point<T>],
    spec: &QuadratureSpec,
) -> Result<Vec<FieldSample<T>>> {
    points
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let local = if spec.is_monte_carlo() {
                spec.with_seed(point_seed(spec.seed, i))
            } else {
                *spec
            };
            let mut s = apply_green(dim, g, x, &local)?;
            s.value = -s.value;
            Ok(s)
        })
        .collect()
}
