//! Exact iteration maps for `f(x) = x² + 1`.
//!
//! Every one-step method here is a [`RationalMap`] with rational
//! coefficients, built symbolically: Householder maps from the `k`-th
//! derivative of `1/f`, Schröder first-kind maps from series reversion. The
//! secant step is two-point and lives as a plain function.

mod householder;
mod poly;
mod rational_map;
mod reversion;
mod scalar;

pub use householder::{
    halley_map, householder_map, inv_f_derivative, newton_map, GaussPoly, GaussRational,
    InvFDerivative,
};
pub use poly::Poly;
pub use rational_map::{LoweredMap, RationalMap};
pub use reversion::{schroeder_first_map, secant_step, series_revert, ExactField, ReversionCoeffs};
pub use scalar::Scalar;
