use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// An angle `θ = tπ` stored as the exact fraction `t` in `[0, 1)`.
///
/// Angles are taken modulo π because `cot(φ + kπ) = cot φ`. The value `0`
/// is the blown-up state (the cotangent is infinite there).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle(Rational);

impl RationalAngle {
    /// Builds `num/den mod 1`, reduced. Negative inputs wrap into `[0, 1)`.
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den == 0 {
            return Err(Error::InvalidAngle);
        }
        Ok(Self::from_rational(Rational::from((num.into(), den))))
    }

    /// Reduces any rational into `[0, 1)`.
    pub fn from_rational(q: Rational) -> Self {
        let (num, den) = q.into_numer_denom();
        let num = num.modulo(&den);
        RationalAngle(Rational::from((num, den)))
    }

    pub fn zero() -> Self {
        RationalAngle(Rational::new())
    }

    pub fn num(&self) -> &Integer {
        self.0.numer()
    }

    pub fn den(&self) -> &Integer {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    /// `θ ≡ π/2`, where the cotangent is `0`.
    pub fn is_half(&self) -> bool {
        *self.0.numer() == 1 && *self.0.denom() == 2
    }

    /// One step of the multiply-by-`m` shift: `(m·t) mod 1`.
    pub fn shift(&self, m: u32) -> Self {
        let num = Integer::from(self.num() * m).modulo(self.den());
        RationalAngle(Rational::from((num, self.den().clone())))
    }

    /// `n` shift steps at once: `(mⁿ·t) mod 1`, via modular exponentiation.
    pub fn shift_n(&self, m: u32, n: u64) -> Self {
        let den = self.den();
        let factor = Integer::from(m)
            .pow_mod(&Integer::from(n), den)
            .expect("positive modulus");
        let num = (factor * self.num()).modulo(den);
        RationalAngle(Rational::from((num, den.clone())))
    }

    /// `(self + other) mod 1`.
    pub fn add(&self, other: &Self) -> Self {
        Self::from_rational(Rational::from(&self.0 + &other.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angle(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d).unwrap()
    }

    #[test]
    fn make_angle_examples() {
        assert_eq!(angle(1, 3).to_string(), "1/3");
        assert_eq!(angle(5, 4), angle(1, 4));
        assert_eq!(angle(2, 6), angle(1, 3));
        assert_eq!(angle(-1, 3), angle(2, 3));
        assert_eq!(angle(3, -4), angle(1, 4));
        assert_eq!(angle(7, 7), RationalAngle::zero());
        assert!(matches!(RationalAngle::new(1, 0), Err(Error::InvalidAngle)));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(angle(1, 3).shift(2), angle(2, 3));
        assert_eq!(angle(1, 2).shift(3), angle(1, 2));
        let a = angle(1, 4).shift(2);
        assert_eq!(a, angle(1, 2));
        assert!(a.shift(2).is_zero());
    }

    #[test]
    fn shift_n_matches_repeated_shift() {
        let t = angle(5, 37);
        let mut s = t.clone();
        for n in 0..40u64 {
            assert_eq!(t.shift_n(3, n), s);
            s = s.shift(3);
        }
    }
}
