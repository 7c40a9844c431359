//! Operator norms of the Green operator `𝒢[g](x) = ∫ G(x,y) g(y) dy`.
//!
//! Closed forms: the `L^p → L^∞` norm, the extremal radial profile and its
//! value at the centre, the first Dirichlet eigenvalue, the interpolated
//! `L^p → L^p` bounds and the Riesz potential bound. Numerical counterparts:
//! `∫ G(x,y)^q dy` by three independent routes, a radial sup scan and
//! quadrature witnesses for the `L^p` bounds.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{green, green_zonal_precise, BallDim, Point};
use crate::potential::{apply_green, SourceField};
use crate::quadrature::{
    ball_zonal_integral_focused, graded_panels, monte_carlo_star, GaussRule, IntegralEstimate,
    QuadratureSpec, SphereRule, StarLaw, ZonalCoord,
};
use crate::scalar::Real;
use crate::specfun::{bessel_first_zero, ln_gamma};

/// Radii above `1 - SUP_EPS` are excluded from sup scans.
pub const SUP_EPS: f64 = 1e-3;

/// Conjugate exponents `1/p + 1/q = 1`, stored through `q ∈ [1, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair<T> {
    p: T,
    q: T,
}

impl<T: Real> ExponentPair<T> {
    pub fn from_q(q: T) -> Result<Self> {
        if !(q >= T::one()) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "q must lie in [1, ∞), got {q}"
            )));
        }
        let p = if q == T::one() {
            T::infinity()
        } else {
            q / (q - T::one())
        };
        Ok(Self { p, q })
    }

    pub fn from_p(p: T) -> Result<Self> {
        if !(p > T::one()) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in (1, ∞], got {p}"
            )));
        }
        let q = if p.is_infinite() {
            T::one()
        } else {
            p / (p - T::one())
        };
        Ok(Self { p, q })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// `a = n - q(n-2)`; positive exactly when the pair is admissible.
    pub fn a(&self, dim: &BallDim<T>) -> T {
        dim.nf() - self.q * (dim.nf() - T::lit(2.0))
    }

    /// `(n + a) / 2`, the exponent of the zonal sphere factor.
    pub fn lambda_exp(&self, dim: &BallDim<T>) -> T {
        (dim.nf() + self.a(dim)) * T::lit(0.5)
    }

    /// `p > n/2`, equivalently `q < n/(n-2)`.
    pub fn is_admissible(&self, dim: &BallDim<T>) -> bool {
        self.a(dim) > T::zero()
    }

    pub fn check_admissible(&self, dim: &BallDim<T>) -> Result<()> {
        if self.is_admissible(dim) {
            Ok(())
        } else {
            let n = dim.n() as f64;
            Err(Error::Admissibility(format!(
                "q = {} must be below n/(n-2) = {}",
                self.q,
                n / (n - 2.0)
            )))
        }
    }
}

/// Which norm a [`NormReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormQuantity {
    PToInf,
    PToP,
    L1,
    L2,
    LInf,
}

impl NormQuantity {
    pub fn label(&self) -> &'static str {
        match self {
            NormQuantity::PToInf => "p_to_inf",
            NormQuantity::PToP => "p_to_p",
            NormQuantity::L1 => "l1",
            NormQuantity::L2 => "l2",
            NormQuantity::LInf => "linf",
        }
    }
}

/// Closed-form norm next to its numerical estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub quantity: NormQuantity,
    pub closed_form: T,
    pub numeric: T,
    pub std_error: T,
    pub abs_err: T,
    pub rel_err: T,
    pub argmax_t: T,
    pub spec: QuadratureSpec,
}

impl<T: Real> NormReport<T> {
    pub fn new(
        quantity: NormQuantity,
        closed_form: T,
        numeric: T,
        std_error: T,
        argmax_t: T,
        spec: QuadratureSpec,
    ) -> Self {
        let abs_err = (closed_form - numeric).abs();
        Self {
            quantity,
            closed_form,
            numeric,
            std_error,
            abs_err,
            rel_err: abs_err / closed_form.abs(),
            argmax_t,
            spec,
        }
    }
}

/// `‖𝒢 : L^p → L^∞‖ = c_n (π^{n/2} Γ(1+q) Γ((n-q(n-2))/(n-2)) / (Γ(1+n/2) Γ(n/(n-2))))^{1/q}`.
///
/// Evaluated in log space; equals `1/(2n)` at `q = 1`.
pub fn theorem1_norm<T: Real>(dim: &BallDim<T>, ep: &ExponentPair<T>) -> Result<T> {
    ep.check_admissible(dim)?;
    let n = dim.nf();
    let two = T::lit(2.0);
    let q = ep.q();
    let ln = n / two * T::PI().ln() + ln_gamma(T::one() + q)? + ln_gamma(ep.a(dim) / (n - two))?
        - ln_gamma(T::one() + n / two)?
        - ln_gamma(n / (n - two))?;
    Ok(dim.c_n() * (ln / q).exp())
}

/// `I(0) = Γ(1+q) Γ(a/(n-2)) / ((n-2) Γ(1+q+a/(n-2)))`, the value of the
/// radial profile at the centre.
pub fn lemma2_closed_i0<T: Real>(dim: &BallDim<T>, ep: &ExponentPair<T>) -> Result<T> {
    ep.check_admissible(dim)?;
    let nm2 = dim.nf() - T::lit(2.0);
    let q = ep.q();
    let k = ep.a(dim) / nm2;
    Ok((ln_gamma(T::one() + q)? + ln_gamma(k)? - ln_gamma(T::one() + q + k)?).exp() / nm2)
}

fn check_radius<T: Real>(t: T) -> Result<()> {
    if !(t >= T::zero() && t < T::one()) {
        return Err(Error::Domain(format!("radius must lie in [0, 1), got {t}")));
    }
    Ok(())
}

/// `∫₀¹ f(r) r^{a-1} dr` after the substitution `v = r^a`, which removes the
/// endpoint singularity; panels are graded toward both ends.
fn integrate_r_power<T: Real, F: Fn(T) -> T>(a: T, spec: &QuadratureSpec, f: F) -> T {
    let rule = GaussRule::new(spec.nodes_radial);
    let panels = graded_panels(T::zero(), T::one(), spec.subdivisions, true, true);
    let inv_a = a.recip();
    panels
        .iter()
        .map(|&(lo, hi)| rule.integrate(lo, hi, |v| f(v.powf(inv_a))))
        .sum::<T>()
        * inv_a
}

/// Radial profile
/// `I(t) = (1-t²)^a ∫₀¹ (1-r^{n-2})^q r^{a-1} (1-r²t²)^{-(a+1)} dr`.
pub fn lemma2_profile<T: Real>(
    dim: &BallDim<T>,
    ep: &ExponentPair<T>,
    t: T,
    spec: &QuadratureSpec,
) -> Result<T> {
    ep.check_admissible(dim)?;
    check_radius(t)?;
    spec.validate()?;
    let a = ep.a(dim);
    let q = ep.q();
    let nm2 = dim.nf() - T::lit(2.0);
    let t2 = t * t;
    let integral = integrate_r_power(a, spec, |r| {
        (T::one() - r.powf(nm2)).powf(q) * (T::one() - r * r * t2).powf(-(a + T::one()))
    });
    Ok((T::one() - t2).powf(a) * integral)
}

/// Evaluation route for [`green_q_integral_via`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenQRoute {
    /// Möbius-reduced radial integral with the zonal sphere factor.
    Reduced,
    /// Tensor quadrature of `G^q` itself, refined toward the singular point.
    /// The integrand behaves like `|y - x|^{-q(n-2)}`, so accuracy degrades
    /// as `a = n - q(n-2)` approaches 0.
    RawZonal,
    /// Star-shaped Monte Carlo centred at the singular point.
    MonteCarlo,
}

/// `𝓘(x) = ∫_{Bⁿ} G(x,y)^q dy` at `|x| = t`; Gauss–Legendre specs take the
/// reduced route and Monte Carlo specs the sampling route.
pub fn green_q_integral<T: Real>(
    dim: &BallDim<T>,
    ep: &ExponentPair<T>,
    t: T,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>> {
    let route = if spec.is_monte_carlo() {
        GreenQRoute::MonteCarlo
    } else {
        GreenQRoute::Reduced
    };
    green_q_integral_via(dim, ep, t, spec, route)
}

/// `∫_{Bⁿ} G(x,y)^q dy` at `x = t·e₁` by the chosen route.
///
/// The reduced route uses the substitution `z = T_x y`, after which
/// `𝓘 = c_n^q (1-t²)^a ∫₀¹ (1-r^{n-2})^q r^{a-1} Z(rt) dr` with the sphere
/// factor `Z(ρ) = ∫_{S^{n-1}} |ρe₁ + ξ|^{-(n+a)} dξ`.
pub fn green_q_integral_via<T: Real>(
    dim: &BallDim<T>,
    ep: &ExponentPair<T>,
    t: T,
    spec: &QuadratureSpec,
    route: GreenQRoute,
) -> Result<IntegralEstimate<T>> {
    ep.check_admissible(dim)?;
    check_radius(t)?;
    spec.validate()?;
    let q = ep.q();
    let a = ep.a(dim);
    match route {
        GreenQRoute::Reduced => {
            let nm2 = dim.nf() - T::lit(2.0);
            let sphere = SphereRule::new(dim, spec);
            let expo = -ep.lambda_exp(dim);
            let integral = integrate_r_power(a, spec, |r| {
                let rho = r * t;
                let one_minus_rho = T::one() - rho;
                // |ρe₁ + ξ|² = (1-ρ)² + 2ρ(1-s) after s ↦ -s
                let z = sphere.integrate(|_, oms| {
                    (one_minus_rho * one_minus_rho + T::lit(2.0) * rho * oms).powf(expo)
                });
                (T::one() - r.powf(nm2)).powf(q) * z
            });
            let value = dim.c_n().powf(q) * (T::one() - t * t).powf(a) * integral;
            Ok(IntegralEstimate::exact(value, spec.nodes_radial))
        }
        GreenQRoute::RawZonal => ball_zonal_integral_focused(
            dim,
            |z: ZonalCoord<T>| green_zonal_precise(dim, t, z.r, z.one_minus_s).powf(q),
            &[t],
            spec,
        ),
        GreenQRoute::MonteCarlo => {
            let x = Point::on_axis(dim.n(), 0, t);
            monte_carlo_star(
                dim,
                &x,
                &StarLaw::power(a),
                |y| match green(dim, &x, y) {
                    Ok(g) => g.powf(q),
                    Err(_) => T::nan(),
                },
                spec,
            )
        }
    }
}

/// Maximises `f` over `[0, 1-ε]`, `ε = 1e-3`: a uniform grid of `grid`
/// points, optionally refined by golden-section search around the best one.
/// The refined point replaces the grid point only if it is better by more
/// than a few ulps. Returns `(argmax, max)`.
pub fn sup_scan<T: Real, F: FnMut(T) -> T>(mut f: F, grid: usize, refine: bool) -> (T, T) {
    try_sup_scan(|t| Ok::<T, Error>(f(t)), grid, refine).expect("infallible")
}

/// [`sup_scan`] for fallible functions.
pub fn try_sup_scan<T: Real, E, F: FnMut(T) -> std::result::Result<T, E>>(
    mut f: F,
    grid: usize,
    refine: bool,
) -> std::result::Result<(T, T), E> {
    let grid = grid.max(2);
    let top = T::one() - T::lit(SUP_EPS);
    let step = top / T::from_count(grid - 1);
    let mut best = (T::zero(), T::neg_infinity());
    let mut best_i = 0;
    for i in 0..grid {
        let t = step * T::from_count(i);
        let v = f(t)?;
        if v > best.1 {
            best = (t, v);
            best_i = i;
        }
    }
    if !refine {
        return Ok(best);
    }
    let mut lo = if best_i == 0 {
        T::zero()
    } else {
        step * T::from_count(best_i - 1)
    };
    let mut hi = if best_i + 1 == grid {
        top
    } else {
        step * T::from_count(best_i + 1)
    };
    let ratio = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..60 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let (x, v) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    // improvements at the level of rounding noise keep the grid point
    if v - best.1 > T::lit(16.0) * T::epsilon() * best.1.abs() {
        best = (x, v);
    }
    Ok(best)
}

/// First Dirichlet eigenvalue of `-Δ` on `Bⁿ`: the square of the first
/// positive zero of `J_{n/2-1}`.
pub fn lambda1<T: Real>(dim: &BallDim<T>) -> Result<T> {
    let alpha = dim.nf() * T::lit(0.5) - T::one();
    Ok(bessel_first_zero(alpha)?.powi(2))
}

fn check_p<T: Real>(p: T) -> Result<()> {
    if !(p >= T::one()) {
        return Err(Error::Domain(format!("p must be >= 1, got {p}")));
    }
    Ok(())
}

/// The two interpolation formulas behind [`riesz_thorin_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RieszThorinBranch {
    /// `(2n)^{(p-2)/p} λ₁^{2(1-p)/p}`, interpolating `L¹` and `L²`.
    Low,
    /// `(2n)^{(2-p)/p} λ₁^{-2/p}`, interpolating `L²` and `L^∞`.
    High,
}

/// One branch formula evaluated at any finite `p >= 1`.
pub fn riesz_thorin_branch<T: Real>(
    dim: &BallDim<T>,
    branch: RieszThorinBranch,
    p: T,
) -> Result<T> {
    check_p(p)?;
    if p.is_infinite() {
        return Err(Error::Domain("branch formulas need finite p".into()));
    }
    let two = T::lit(2.0);
    let two_n = two * dim.nf();
    let lam = lambda1(dim)?;
    Ok(match branch {
        RieszThorinBranch::Low => two_n.powf((p - two) / p) * lam.powf(two * (T::one() - p) / p),
        RieszThorinBranch::High => two_n.powf((two - p) / p) * lam.powf(-two / p),
    })
}

/// Interpolated bound on `‖𝒢 : L^p → L^p‖` between the exact endpoint norms
/// `‖𝒢‖₁ = ‖𝒢‖_∞ = 1/(2n)` and `‖𝒢‖₂ = 1/λ₁`; the endpoints are returned
/// exactly, other `p` use [`RieszThorinBranch::Low`] below 2 and
/// [`RieszThorinBranch::High`] above.
pub fn riesz_thorin_bound<T: Real>(dim: &BallDim<T>, p: T) -> Result<T> {
    check_p(p)?;
    let two_n = T::lit(2.0) * dim.nf();
    if p == T::one() || p.is_infinite() {
        return Ok(two_n.recip());
    }
    if p == T::lit(2.0) {
        return Ok(lambda1(dim)?.recip());
    }
    let branch = if p < T::lit(2.0) {
        RieszThorinBranch::Low
    } else {
        RieszThorinBranch::High
    };
    riesz_thorin_branch(dim, branch, p)
}

/// The `p >= 2` branch with the exponent `(p-2)/p` on `2n`, kept for
/// comparison: it tends to `2n` rather than `1/(2n)` as `p → ∞`.
pub fn riesz_thorin_bound_as_printed<T: Real>(dim: &BallDim<T>, p: T) -> Result<T> {
    check_p(p)?;
    let two = T::lit(2.0);
    if p <= two {
        return riesz_thorin_bound(dim, p);
    }
    let two_n = two * dim.nf();
    let lam = lambda1(dim)?;
    if p.is_infinite() {
        return Ok(two_n);
    }
    Ok(two_n.powf((p - two) / p) * lam.powf(-two / p))
}

/// Bound `((1-δ)/(μ-δ))^{1-δ} (ω_{n-1}/n)^{1-μ} |Ω|^{μ-δ}` on the Riesz
/// potential `V_μ : L^p(Ω) → L^q(Ω)`, `δ = 1/p - 1/q`.
pub fn riesz_potential_bound<T: Real>(dim: &BallDim<T>, mu: T, p: T, q: T, volume: T) -> Result<T> {
    if !(mu > T::zero() && mu <= T::one()) {
        return Err(Error::InvalidParameter(format!(
            "μ must lie in (0, 1], got {mu}"
        )));
    }
    if !(p > T::zero() && q >= T::one()) || !(volume > T::zero()) {
        return Err(Error::InvalidParameter(
            "need p > 0, q >= 1 and |Ω| > 0".into(),
        ));
    }
    let delta = p.recip() - q.recip();
    if delta < T::zero() || delta >= mu {
        return Err(Error::Admissibility(format!(
            "need 0 <= δ < μ, got δ = {delta}, μ = {mu}"
        )));
    }
    let one = T::one();
    Ok(((one - delta) / (mu - delta)).powf(one - delta)
        * (dim.omega() / dim.nf()).powf(one - mu)
        * volume.powf(mu - delta))
}

/// Radial test sources for [`lp_lower_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSource {
    ConstOne,
    Phi1,
}

/// `‖𝒢[g]‖_p / ‖g‖_p` for a radial source, a lower bound for `‖𝒢‖_p`.
///
/// Both norms are radial integrals over Gauss–Legendre nodes; `𝒢[g]` at each
/// node comes from [`apply_green`] with `spec`. For Monte Carlo specs the
/// returned standard error assumes fully correlated node errors.
pub fn lp_lower_bound<T: Real>(
    dim: &BallDim<T>,
    p: T,
    source: TestSource,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>> {
    if !(p > T::one()) || p.is_infinite() {
        return Err(Error::Domain(format!("p must lie in (1, ∞), got {p}")));
    }
    spec.validate()?;
    let g = match source {
        TestSource::ConstOne => SourceField::const_one(),
        TestSource::Phi1 => SourceField::phi1(dim)?,
    };
    let rule = GaussRule::<T>::new(spec.nodes_radial);
    let panels = graded_panels(T::zero(), T::one(), 3, false, true);
    let nodes: Vec<(T, T)> = panels
        .iter()
        .flat_map(|&(lo, hi)| {
            let w = hi - lo;
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(move |(&x, &wt)| (lo + w * x, wt * w))
                .collect::<Vec<_>>()
        })
        .collect();
    let n = dim.n();
    // (radial weight, 𝒢[g](r), σ, g(r))
    let samples: Vec<Result<(T, T, T, T)>> = nodes
        .par_iter()
        .map(|&(r, w)| {
            let x = Point::on_axis(n, 0, r);
            let u = apply_green(dim, &g, &x, spec)?;
            let gr = g.eval(&x);
            Ok((w * r.powi(n as i32 - 1), u.value, u.std_error, gr))
        })
        .collect();
    let mut num = T::zero();
    let mut num_err = T::zero();
    let mut den = T::zero();
    for s in samples {
        let (wr, u, su, gr) = s?;
        num = num + wr * u.abs().powf(p);
        num_err = num_err + wr * p * u.abs().powf(p - T::one()) * su;
        den = den + wr * gr.abs().powf(p);
    }
    let ratio = (num / den).powf(p.recip());
    let std_error = ratio * num_err / (p * num);
    Ok(IntegralEstimate {
        value: ratio,
        std_error,
        nodes_or_samples: nodes.len(),
    })
}
