//! Geometry of the unit ball: points, the bracket `[x, y]`, Möbius
//! automorphisms, the Green function and the Poisson kernel.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Points with `| |x| - 1 | <= BOUNDARY_TOL` count as boundary points.
pub const BOUNDARY_TOL: f64 = 1e-14;

/// Surface measure of the unit sphere `S^k ⊂ R^{k+1}`: `2π^{(k+1)/2} / Γ((k+1)/2)`.
pub fn sphere_measure<T: Real>(k: usize) -> T {
    // Γ(m/2) by the recurrence from Γ(1) = 1 or Γ(1/2) = √π
    let m = k + 1;
    let mut gamma_half = if m.is_multiple_of(2) { T::one() } else { T::PI().sqrt() };
    let mut arg = if m.is_multiple_of(2) { T::one() } else { T::lit(0.5) };
    let target = T::from_count(m) * T::lit(0.5);
    while arg < target {
        gamma_half = gamma_half * arg;
        arg = arg + T::one();
    }
    let pi_power = if m.is_multiple_of(2) {
        T::PI().powi((m / 2) as i32)
    } else {
        T::PI().powi((m / 2) as i32) * T::PI().sqrt()
    };
    T::lit(2.0) * pi_power / gamma_half
}

/// Dimension `n >= 3` of the ball together with its geometric constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallDim<T> {
    n: usize,
    omega: T,
    c_n: T,
    volume: T,
}

impl<T: Real> BallDim<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be >= 3, got {n}"
            )));
        }
        let omega: T = sphere_measure(n - 1);
        let nf = T::from_count(n);
        Ok(Self {
            n,
            omega,
            c_n: ((nf - T::lit(2.0)) * omega).recip(),
            volume: omega / nf,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension as a scalar.
    pub fn nf(&self) -> T {
        T::from_count(self.n)
    }

    /// `ω_{n-1}`, the surface measure of `S^{n-1}`.
    pub fn omega(&self) -> T {
        self.omega
    }

    /// Normalising constant `c_n = 1 / ((n-2) ω_{n-1})` of the Green function.
    pub fn c_n(&self) -> T {
        self.c_n
    }

    /// Volume of `Bⁿ`, `ω_{n-1} / n`.
    pub fn volume(&self) -> T {
        self.volume
    }

    /// `ω_{n-2}`, the measure of the equatorial sphere used by zonal reductions.
    pub fn omega_equator(&self) -> T {
        sphere_measure(self.n - 2)
    }

    /// Rejects points whose dimension differs from `n`.
    pub fn check(&self, p: &Point<T>) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        Ok(())
    }
}

/// A point of `Rⁿ` with its cached Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
    norm: T,
}

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        let norm = coords.iter().map(|&c| c * c).sum::<T>().sqrt();
        Self { coords, norm }
    }

    pub fn origin(n: usize) -> Self {
        Self {
            coords: vec![T::zero(); n],
            norm: T::zero(),
        }
    }

    /// `t·e_{axis}` in `Rⁿ`.
    pub fn on_axis(n: usize, axis: usize, t: T) -> Self {
        let mut coords = vec![T::zero(); n];
        coords[axis] = t;
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    pub fn norm_sq(&self) -> T {
        self.norm * self.norm
    }

    pub fn is_interior(&self) -> bool {
        self.norm < T::one() && !self.is_boundary()
    }

    pub fn is_boundary(&self) -> bool {
        (self.norm - T::one()).abs() <= T::lit(BOUNDARY_TOL)
    }

    pub fn dot(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a * b)
            .sum()
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| c * s).collect(),
            norm: self.norm * s.abs(),
        }
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &Self, s: T) -> Self {
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -T::one())
    }

    pub fn distance(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt()
    }
}

fn same_dim<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(())
}

fn bracket_sq_unchecked<T: Real>(x: &Point<T>, y: &Point<T>) -> T {
    (x.norm_sq() * y.norm_sq() - T::lit(2.0) * x.dot(y) + T::one()).max(T::zero())
}

/// The bracket `[x, y] = | x|y| - y/|y| |`, evaluated as
/// `sqrt(|x|²|y|² - 2⟨x,y⟩ + 1)` so that it is symmetric and equals 1 when
/// either argument is the origin.
pub fn bracket<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<T> {
    same_dim(x, y)?;
    if x.norm() == T::zero() && y.norm() == T::zero() {
        return Err(Error::Domain("bracket [0, 0] is undefined".into()));
    }
    Ok(bracket_sq_unchecked(x, y).sqrt())
}

/// Möbius automorphism `T_x y = ((1-|x|²)(y-x) - |y-x|² x) / [x,y]²`,
/// which maps `x` to the origin and the closed ball onto itself.
pub fn mobius<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<Point<T>> {
    same_dim(x, y)?;
    if !(x.norm() < T::one()) {
        return Err(Error::Domain(format!(
            "Möbius centre must be interior, |x| = {}",
            x.norm()
        )));
    }
    if y.norm() > T::one() + T::lit(BOUNDARY_TOL) {
        return Err(Error::Domain(format!(
            "Möbius argument outside the closed ball, |y| = {}",
            y.norm()
        )));
    }
    let diff = y.sub(x);
    let one_minus = T::one() - x.norm_sq();
    let diff_sq = diff.norm_sq();
    let denom = bracket_sq_unchecked(x, y);
    Ok(Point::new(
        diff.coords
            .iter()
            .zip(&x.coords)
            .map(|(&d, &xc)| (one_minus * d - diff_sq * xc) / denom)
            .collect(),
    ))
}

/// Volume factor `dy/dz = ((1-|x|²) / [z,-x]²)ⁿ` of the substitution `y = T_{-x} z`.
pub fn mobius_jacobian_factor<T: Real>(dim: &BallDim<T>, x: &Point<T>, z: &Point<T>) -> Result<T> {
    dim.check(x)?;
    dim.check(z)?;
    if !(x.norm() < T::one()) || !(z.norm() < T::one()) {
        return Err(Error::Domain(
            "Jacobian factor needs interior points".into(),
        ));
    }
    // [z, -x]² = |z|²|x|² + 2⟨z,x⟩ + 1
    let bracket_sq = z.norm_sq() * x.norm_sq() + T::lit(2.0) * z.dot(x) + T::one();
    Ok(((T::one() - x.norm_sq()) / bracket_sq).powi(dim.n() as i32))
}

/// Green function from the two distances it depends on: `|x-y|` and `[x,y]`.
pub(crate) fn green_from_distances<T: Real>(dim: &BallDim<T>, dist: T, bracket: T) -> T {
    let e = 2 - dim.n() as i32;
    (dim.c_n() * (dist.powi(e) - bracket.powi(e))).max(T::zero())
}

/// Green function in zonal coordinates with `1 - s` supplied separately, which
/// keeps full precision as `y` approaches the ray through `x`.
pub fn green_zonal_precise<T: Real>(dim: &BallDim<T>, t: T, r: T, one_minus_s: T) -> T {
    let cross = T::lit(2.0) * t * r * one_minus_s;
    let dist_sq = (r - t) * (r - t) + cross;
    let bracket_sq = (T::one() - t * r) * (T::one() - t * r) + cross;
    green_from_distances(dim, dist_sq.sqrt(), bracket_sq.sqrt())
}

/// Green function in zonal coordinates: `|x| = t`, `|y| = r`, and `s` the
/// cosine of the angle between `x` and `y`.
pub fn green_zonal<T: Real>(dim: &BallDim<T>, t: T, r: T, s: T) -> T {
    let two_trs = T::lit(2.0) * t * r * s;
    let dist_sq = (t * t + r * r - two_trs).max(T::zero());
    let bracket_sq = (t * t * r * r - two_trs + T::one()).max(T::zero());
    green_from_distances(dim, dist_sq.sqrt(), bracket_sq.sqrt())
}

/// Green function `G(x,y) = c_n (|x-y|^{2-n} - [x,y]^{2-n})` of the unit ball.
///
/// Nonnegative, symmetric, and zero when either argument is on the sphere.
/// The diagonal `x = y` is reported as [`Error::Singular`].
pub fn green<T: Real>(dim: &BallDim<T>, x: &Point<T>, y: &Point<T>) -> Result<T> {
    dim.check(x)?;
    dim.check(y)?;
    let outside = T::one() + T::lit(BOUNDARY_TOL);
    if x.norm() > outside || y.norm() > outside {
        return Err(Error::Domain(
            "Green function arguments must lie in the closed ball".into(),
        ));
    }
    let dist = x.distance(y);
    if dist == T::zero() {
        return Err(Error::Singular);
    }
    Ok(green_from_distances(
        dim,
        dist,
        bracket_sq_unchecked(x, y).sqrt(),
    ))
}

/// Poisson kernel `P(x, η) = (1-|x|²) / |x-η|ⁿ` for interior `x`, boundary `η`.
pub fn poisson_kernel<T: Real>(dim: &BallDim<T>, x: &Point<T>, eta: &Point<T>) -> Result<T> {
    dim.check(x)?;
    dim.check(eta)?;
    if !x.is_interior() {
        return Err(Error::Domain(format!(
            "Poisson kernel needs |x| < 1, got {}",
            x.norm()
        )));
    }
    if !eta.is_boundary() {
        return Err(Error::Domain(format!(
            "Poisson kernel needs |η| = 1, got {}",
            eta.norm()
        )));
    }
    Ok((T::one() - x.norm_sq()) / x.distance(eta).powi(dim.n() as i32))
}
