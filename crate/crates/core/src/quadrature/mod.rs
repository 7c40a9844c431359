//! Integration over `[0, 1]`, the sphere and the ball.
//!
//! Deterministic rules are tensor/panel Gauss–Legendre; the Monte Carlo
//! estimators are seeded per block so that identical [`QuadratureSpec`]s give
//! bit-identical [`IntegralEstimate`]s regardless of thread scheduling.

mod gauss;
mod monte_carlo;
mod zonal;

pub use gauss::{gauss_legendre_rule, graded_panels, integrate_panels, GaussRule};
pub use monte_carlo::{
    mc_mean, monte_carlo_ball, monte_carlo_star, sample_direction, star_point, McRng, StarLaw,
    StarSample, MC_BLOCK,
};
pub(crate) use zonal::SphereRule;
pub use zonal::{
    ball_zonal_integral, ball_zonal_integral_focused, ball_zonal_integral_separable,
    sphere_zonal_integral, sphere_zonal_integral_precise, ZonalCoord,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureMethod {
    GaussLegendreTensor,
    MonteCarlo,
}

/// Full description of how an integral is to be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    /// Gauss–Legendre nodes per radial panel.
    pub nodes_radial: usize,
    /// Gauss–Legendre nodes per angular panel.
    pub nodes_angular: usize,
    pub mc_samples: usize,
    pub seed: u64,
    /// Dyadic grading levels toward endpoints and focus points.
    pub subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            method: QuadratureMethod::GaussLegendreTensor,
            nodes_radial: 12,
            nodes_angular: 12,
            mc_samples: 200_000,
            seed: 7,
            subdivisions: 24,
        }
    }
}

impl QuadratureSpec {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self {
            method: QuadratureMethod::MonteCarlo,
            mc_samples: samples,
            seed,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn is_monte_carlo(&self) -> bool {
        self.method == QuadratureMethod::MonteCarlo
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_radial < 2 || self.nodes_angular < 2 {
            return Err(Error::InvalidParameter(
                "quadrature node counts must be >= 2".into(),
            ));
        }
        if self.subdivisions == 0 {
            return Err(Error::InvalidParameter("subdivisions must be >= 1".into()));
        }
        if self.is_monte_carlo() && self.mc_samples < 1000 {
            return Err(Error::InvalidParameter(format!(
                "Monte Carlo needs at least 1000 samples, got {}",
                self.mc_samples
            )));
        }
        Ok(())
    }
}

/// Value of an integral with its standard error (zero for converged
/// deterministic rules) and the number of nodes or samples used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate<T> {
    pub value: T,
    pub std_error: T,
    pub nodes_or_samples: usize,
}

impl<T: crate::Real> IntegralEstimate<T> {
    pub fn exact(value: T, nodes: usize) -> Self {
        Self {
            value,
            std_error: T::zero(),
            nodes_or_samples: nodes,
        }
    }

    /// True when `|value - reference| <= sigmas·std_error + slack`.
    pub fn agrees_with(&self, reference: T, sigmas: T, slack: T) -> bool {
        (self.value - reference).abs() <= sigmas * self.std_error + slack
    }
}
