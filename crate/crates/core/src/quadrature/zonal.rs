use rayon::prelude::*;

use super::gauss::{graded_panels, GaussRule};
use super::{IntegralEstimate, QuadratureSpec};
use crate::error::Result;
use crate::geometry::BallDim;
use crate::scalar::Real;

/// Relative disagreement between the fine and the coarse rule above which the
/// difference is reported in `std_error` as an accuracy warning.
const REFINEMENT_RTOL: f64 = 1e-10;

fn coarse_nodes(k: usize) -> usize {
    (2 * k / 3).max(2)
}

fn refinement_estimate<T: Real>(fine: T, coarse: T, nodes: usize) -> IntegralEstimate<T> {
    let diff = (fine - coarse).abs();
    let std_error = if diff <= T::lit(REFINEMENT_RTOL) * fine.abs() {
        T::zero()
    } else {
        diff
    };
    IntegralEstimate {
        value: fine,
        std_error,
        nodes_or_samples: nodes,
    }
}

/// Angular node: `s = cos θ`, `1 - s` computed without cancellation, and the
/// weight `w·sin^{n-2} θ`.
#[derive(Debug, Clone, Copy)]
struct AngularNode<T> {
    s: T,
    one_minus_s: T,
    w: T,
}

/// Angular nodes on `[0, π]`, graded toward θ = 0.
fn angular_nodes<T: Real>(n: usize, levels: usize, rule: &GaussRule<T>) -> Vec<AngularNode<T>> {
    let panels = graded_panels(T::zero(), T::PI(), levels, true, false);
    let mut out = Vec::with_capacity(panels.len() * rule.len());
    for (a, b) in panels {
        let width = b - a;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let theta = a + width * x;
            let half_sin = (theta * T::lit(0.5)).sin();
            out.push(AngularNode {
                s: theta.cos(),
                one_minus_s: T::lit(2.0) * half_sin * half_sin,
                w: w * width * theta.sin().powi(n as i32 - 2),
            });
        }
    }
    out
}

/// Flattened `(r, w·r^{n-1})` pairs on `[0, 1]`, graded toward 0, 1 and every focus radius.
fn radial_nodes<T: Real>(n: usize, focus: &[T], levels: usize, rule: &GaussRule<T>) -> Vec<(T, T)> {
    let mut cuts = vec![T::zero(), T::one()];
    cuts.extend(
        focus
            .iter()
            .copied()
            .filter(|&f| f > T::zero() && f < T::one()),
    );
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite focus radii"));
    cuts.dedup();
    let mut out = Vec::new();
    for c in cuts.windows(2) {
        for (a, b) in graded_panels(c[0], c[1], levels, true, true) {
            let width = b - a;
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let r = a + width * x;
                out.push((r, w * width * r.powi(n as i32 - 1)));
            }
        }
    }
    out
}

fn sphere_sum<T: Real, G: Fn(T, T) -> T>(g: &G, nodes: &[AngularNode<T>]) -> T {
    nodes.iter().map(|nd| nd.w * g(nd.s, nd.one_minus_s)).sum()
}

/// `∫_{S^{n-1}} g(ξ₁) dξ = ω_{n-2} ∫_{-1}^{1} g(s) (1-s²)^{(n-3)/2} ds`.
///
/// The substitution `s = cos θ` turns the weight into `sin^{n-2} θ`, which is
/// smooth for every `n`. Panels are graded toward `s = 1`, so integrands with a
/// concentration should be oriented to peak there.
pub fn sphere_zonal_integral<T: Real, G: Fn(T) -> T>(
    dim: &BallDim<T>,
    g: G,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>> {
    sphere_zonal_integral_precise(dim, |s, _| g(s), spec)
}

/// [`sphere_zonal_integral`] for integrands that also take `1 - s`, which is
/// supplied without cancellation near `s = 1`.
pub fn sphere_zonal_integral_precise<T: Real, G: Fn(T, T) -> T>(
    dim: &BallDim<T>,
    g: G,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>> {
    spec.validate()?;
    let omega = dim.omega_equator();
    let fine_nodes = angular_nodes(
        dim.n(),
        spec.subdivisions,
        &GaussRule::new(spec.nodes_angular),
    );
    let coarse = angular_nodes(
        dim.n(),
        spec.subdivisions,
        &GaussRule::new(coarse_nodes(spec.nodes_angular)),
    );
    let fine = omega * sphere_sum(&g, &fine_nodes);
    let coarse = omega * sphere_sum(&g, &coarse);
    Ok(refinement_estimate(fine, coarse, fine_nodes.len()))
}

/// Sphere integral on a prepared node set, without the refinement check.
pub(crate) struct SphereRule<T> {
    nodes: Vec<AngularNode<T>>,
    omega: T,
}

impl<T: Real> SphereRule<T> {
    pub(crate) fn new(dim: &BallDim<T>, spec: &QuadratureSpec) -> Self {
        Self {
            nodes: angular_nodes(
                dim.n(),
                spec.subdivisions,
                &GaussRule::new(spec.nodes_angular),
            ),
            omega: dim.omega_equator(),
        }
    }

    pub(crate) fn integrate<G: Fn(T, T) -> T>(&self, g: G) -> T {
        self.omega * sphere_sum(&g, &self.nodes)
    }
}

/// Zonal coordinates of a point `y` of the ball: `r = |y|`, `s` the cosine of
/// the angle to the axis, and `1 - s` computed without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZonalCoord<T> {
    pub r: T,
    pub s: T,
    pub one_minus_s: T,
}

fn ball_sum<T: Real, R: Fn(T) -> T + Sync, H: Fn(ZonalCoord<T>) -> T + Sync>(
    radial_factor: &R,
    h: &H,
    radial: &[(T, T)],
    angular: &[AngularNode<T>],
) -> T {
    let partial: Vec<T> = radial
        .par_iter()
        .map(|&(r, wr)| {
            wr * radial_factor(r)
                * angular
                    .iter()
                    .map(|nd| {
                        nd.w * h(ZonalCoord {
                            r,
                            s: nd.s,
                            one_minus_s: nd.one_minus_s,
                        })
                    })
                    .sum::<T>()
        })
        .collect();
    partial.into_iter().sum()
}

/// `∫_{Bⁿ} h(|y|, cos∠(y, axis)) dy`, see [`ball_zonal_integral_focused`].
pub fn ball_zonal_integral<T: Real, H: Fn(T, T) -> T + Sync>(
    dim: &BallDim<T>,
    h: H,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>> {
    ball_zonal_integral_focused(dim, |z: ZonalCoord<T>| h(z.r, z.s), &[], spec)
}

/// `∫_{Bⁿ} h(r, s) dy = ω_{n-2} ∫₀¹ ∫_{-1}^{1} h(r,s) r^{n-1} (1-s²)^{(n-3)/2} ds dr`
/// by tensor Gauss–Legendre.
///
/// Radial panels are graded dyadically toward 0, 1 and each radius in
/// `focus`; angular panels toward `s = 1`. A point singularity at
/// `(r, s) = (t, 1)` is therefore resolved by passing `focus = [t]`.
pub fn ball_zonal_integral_focused<T: Real, H: Fn(ZonalCoord<T>) -> T + Sync>(
    dim: &BallDim<T>,
    h: H,
    focus: &[T],
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>> {
    ball_zonal_integral_separable(dim, |_| T::one(), h, focus, spec)
}

/// [`ball_zonal_integral_focused`] for `f(r)·h(r, s)`, evaluating the radial
/// factor `f` once per radial node.
pub fn ball_zonal_integral_separable<T, F, H>(
    dim: &BallDim<T>,
    radial_factor: F,
    h: H,
    focus: &[T],
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate<T>>
where
    T: Real,
    F: Fn(T) -> T + Sync,
    H: Fn(ZonalCoord<T>) -> T + Sync,
{
    spec.validate()?;
    let n = dim.n();
    let levels = spec.subdivisions;
    let omega = dim.omega_equator();
    let radial = radial_nodes(n, focus, levels, &GaussRule::new(spec.nodes_radial));
    let angular = angular_nodes(n, levels, &GaussRule::new(spec.nodes_angular));
    let fine = omega * ball_sum(&radial_factor, &h, &radial, &angular);
    let radial_c = radial_nodes(
        n,
        focus,
        levels,
        &GaussRule::new(coarse_nodes(spec.nodes_radial)),
    );
    let angular_c = angular_nodes(n, levels, &GaussRule::new(coarse_nodes(spec.nodes_angular)));
    let coarse = omega * ball_sum(&radial_factor, &h, &radial_c, &angular_c);
    Ok(refinement_estimate(
        fine,
        coarse,
        radial.len() * angular.len(),
    ))
}
