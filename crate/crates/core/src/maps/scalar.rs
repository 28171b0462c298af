use std::fmt::Display;

use num_complex::Complex64;
use rug::{Complex, Float, Rational};

/// Number kinds the iteration maps can be evaluated over.
///
/// Big-float kinds take their precision from the `like` operand, so a map
/// evaluated at a 120-bit `Float` computes entirely at 120 bits.
pub trait Scalar: Clone + Display {
    fn from_rational_like(q: &Rational, like: &Self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for Rational {
    fn from_rational_like(q: &Rational, _: &Self) -> Self {
        q.clone()
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
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
}

impl Scalar for Float {
    fn from_rational_like(q: &Rational, like: &Self) -> Self {
        Float::with_val(like.prec(), q)
    }
    fn add(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self * rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self / rhs)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
}

impl Scalar for Complex {
    fn from_rational_like(q: &Rational, like: &Self) -> Self {
        Complex::with_val(like.prec(), q)
    }
    fn add(&self, rhs: &Self) -> Self {
        Complex::with_val(self.prec(), self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Complex::with_val(self.prec(), self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Complex::with_val(self.prec(), self * rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Complex::with_val(self.prec(), self / rhs)
    }
    fn is_zero(&self) -> bool {
        self.real().is_zero() && self.imag().is_zero()
    }
}

impl Scalar for f64 {
    fn from_rational_like(q: &Rational, _: &Self) -> Self {
        q.to_f64()
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
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for Complex64 {
    fn from_rational_like(q: &Rational, _: &Self) -> Self {
        Complex64::new(q.to_f64(), 0.0)
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
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}
