//! Exact angle arithmetic: angles `θ = tπ` with rational `t`, the
//! multiply-by-`m` shift that every Householder method induces on them,
//! orbit classification, radix expansions, and the Fibonacci angle formula of
//! the secant method.

mod angle;
mod digits;
mod orbit;
mod secant;

pub use angle::RationalAngle;
pub use digits::{digits, DigitExpansion};
pub use orbit::{classify_orbit, predict_orbit, trace_orbit, Orbit, OrbitClass};
pub use secant::{
    classify_secant_orbit, fib, fib_signed, secant_angle, secant_blowup_step, SecantAngleState,
};
