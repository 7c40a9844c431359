//! Green operator of the Dirichlet problem for the Poisson equation on the
//! unit ball `Bⁿ`, `n >= 3`.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod norms;
pub mod potential;
pub mod quadrature;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type BallDim64 = geometry::BallDim<f64>;
pub type Point64 = geometry::Point<f64>;
pub type Hyp2F1Params64 = specfun::Hyp2F1Params<f64>;
pub type IntegralEstimate64 = quadrature::IntegralEstimate<f64>;
pub type ExponentPair64 = norms::ExponentPair<f64>;
pub type NormReport64 = norms::NormReport<f64>;
pub type Phi1_64 = potential::Phi1<f64>;
pub type SourceField64 = potential::SourceField<f64>;
pub type FieldSample64 = potential::FieldSample<f64>;
