//! Exact chaotic dynamics of classical root-finding iterations on `x² + 1`.
//!
//! With `x = cot θ`, Newton's method doubles the angle, Halley's triples it,
//! the Householder method of order `k` multiplies it by `k + 1`, and the
//! secant method adds consecutive angles. Real seeds therefore never
//! converge: rational angles cycle or blow up, irrational ones wander.
//!
//! - [`exact`]: rational angles, shift-map orbits, digit expansions, secant
//!   Fibonacci formula.
//! - [`maps`]: exact rational iteration maps (Householder of any order,
//!   Schröder first kind, secant step).
//! - [`oracle`]: closed-form cotangent solutions and complex basin analysis.
//! - [`floatlab`]: finite-precision orbits and drift experiments.
//! - [`disguise`]: rewriting a one-step iteration as Newton's method.
//! - [`fractal`]: basin-of-attraction rendering to PPM.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod disguise;
mod error;
pub mod exact;
pub mod floatlab;
pub mod fractal;
pub mod maps;
pub mod method;
pub mod oracle;
pub mod precision;

pub use error::{Error, Result};
pub use method::Method;
