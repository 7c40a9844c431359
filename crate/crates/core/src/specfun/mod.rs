//! Special functions: log-gamma and friends, the Gauss hypergeometric
//! function and Bessel functions of the first kind.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod hyp2f1;

pub use bessel::{bessel_first_zero, bessel_j, bessel_j_over_power};
pub use gamma::{beta, gamma, ln_beta, ln_gamma, pochhammer};
pub use hyp2f1::{hyp2f1, hyp2f1_derivative, Hyp2F1Params, MAX_SERIES_TERMS};
