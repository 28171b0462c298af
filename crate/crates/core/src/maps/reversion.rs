use rug::Rational;

use super::poly::Poly;
use super::rational_map::RationalMap;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exact field elements the reversion formulas can run over: plain rationals
/// for numeric coefficients, rational functions of `x` for the symbolic
/// construction of iteration maps.
pub trait ExactField: Clone {
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl ExactField for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from(n)
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Rational::from(self / rhs)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
}

impl ExactField for RationalMap {
    fn from_int(n: i64) -> Self {
        RationalMap::constant(n)
    }
    fn is_zero(&self) -> bool {
        RationalMap::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Coefficients of the reverted series `Δx = A₁Δy + A₂Δy² + A₃Δy³ + …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversionCoeffs<T> {
    pub linear: T,
    pub quadratic: T,
    pub cubic: T,
}

/// Reverts `Δy = a₁Δx + a₂Δx² + a₃Δx³ + …` through third order:
/// `A₁ = 1/a₁`, `A₂ = −a₂/a₁³`, `A₃ = (2a₂² − a₁a₃)/a₁⁵`.
pub fn series_revert<T: ExactField>(a1: &T, a2: &T, a3: &T) -> Result<ReversionCoeffs<T>> {
    if a1.is_zero() {
        return Err(Error::NotInvertible);
    }
    let a1_sq = a1.mul(a1);
    let a1_cube = a1_sq.mul(a1);
    let a1_fifth = a1_cube.mul(&a1_sq);
    let two_a2_sq = T::from_int(2).mul(&a2.mul(a2));
    Ok(ReversionCoeffs {
        linear: T::from_int(1).div(a1),
        quadratic: a2.div(&a1_cube).neg(),
        cubic: two_a2_sq.sub(&a1.mul(a3)).div(&a1_fifth),
    })
}

/// Schröder's iteration of the first kind for `f = x² + 1`, obtained by
/// truncating the reverted Taylor series at `Δy = −f(x)`.
///
/// Order 2 keeps `A₁` (Newton); order 3 keeps `A₁, A₂`.
pub fn schroeder_first_map(order: u32) -> Result<RationalMap> {
    if !(2..=3).contains(&order) {
        return Err(Error::OrderNotImplemented(order));
    }
    let f = Poly::from_ints(&[1, 0, 1]);
    // Taylor coefficients of f about x: f′, f″/2, f‴/6.
    let a1 = RationalMap::from_poly(f.derivative());
    let a2 = RationalMap::from_poly(f.derivative().derivative().scale(&Rational::from((1, 2))));
    let a3 = RationalMap::from_poly(
        f.derivative()
            .derivative()
            .derivative()
            .scale(&Rational::from((1, 6))),
    );
    let coeffs = series_revert(&a1, &a2, &a3)?;
    let dy = -&RationalMap::from_poly(f);
    let mut step = &coeffs.linear * &dy;
    if order >= 3 {
        step = &step + &(&coeffs.quadratic * &(&dy * &dy));
    }
    Ok(&RationalMap::identity() + &step)
}

/// One secant step on `x² + 1`: `(xₙxₙ₋₁ − 1)/(xₙ + xₙ₋₁)`.
pub fn secant_step<T: Scalar>(x_prev: &T, x_curr: &T) -> Result<T> {
    let one = T::from_rational_like(&Rational::from(1), x_curr);
    let den = x_curr.add(x_prev);
    if den.is_zero() {
        return Err(Error::SecantPole);
    }
    Ok(x_curr.mul(x_prev).sub(&one).div(&den))
}
