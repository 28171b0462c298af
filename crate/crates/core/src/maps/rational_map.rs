use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::poly::{write_terms, Poly};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A rational function `num(x)/den(x)` in canonical form: `num` and `den`
/// share no non-constant factor and `den` is monic. Two maps are equal iff
/// they are the same function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Poly,
    den: Poly,
}

impl RationalMap {
    /// Reduces `num/den`. Panics if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational map with zero denominator");
        if num.is_zero() {
            return RationalMap {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead = Rational::from(den.leading().expect("nonzero").recip_ref());
        RationalMap {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalMap::new(p, Poly::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        RationalMap::from_poly(Poly::constant(c))
    }

    /// The identity map `x`.
    pub fn identity() -> Self {
        RationalMap::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        // Homogenise: Σ aᵢ pⁱ q^(D−i) / Σ bⱼ pʲ q^(D−j).
        let degree = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let (p, q) = (&inner.num, &inner.den);
        let homogenise = |poly: &Poly| {
            poly.coeffs()
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (i, c)| {
                    let term = &p.pow(i as u32) * &q.pow((degree - i) as u32);
                    &acc + &term.scale(c)
                })
        };
        RationalMap::new(homogenise(&self.num), homogenise(&self.den))
    }

    /// `n`-fold self-composition (`n = 0` is the identity).
    pub fn iterate(&self, n: u32) -> RationalMap {
        (0..n).fold(RationalMap::identity(), |acc, _| self.compose(&acc))
    }

    pub fn derivative(&self) -> RationalMap {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalMap::new(top, &self.den * &self.den)
    }

    /// `x·den(x) − num(x)`: its roots are the fixed points.
    pub fn fixed_point_polynomial(&self) -> Poly {
        &self.den.shift_up(1) - &self.num
    }

    /// Exact or floating evaluation; a vanishing denominator is a pole.
    pub fn eval<T: Scalar>(&self, x: &T) -> Result<T> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x).div(&den))
    }

    /// Converts the coefficients once for repeated evaluation in one number kind.
    pub fn lower<T: Scalar>(&self, like: &T) -> LoweredMap<T> {
        let conv = |p: &Poly| {
            p.coeffs()
                .iter()
                .map(|c| T::from_rational_like(c, like))
                .collect()
        };
        LoweredMap {
            num: conv(&self.num),
            den: conv(&self.den),
        }
    }

    /// `(num, den)` scaled to coprime integer coefficients with positive
    /// leading denominator coefficient.
    pub fn integer_normalized(&self) -> (Vec<Integer>, Vec<Integer>) {
        let lcm = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        let factor = Rational::from(lcm);
        let num = self.num.integer_coeffs(&factor);
        let den = self.den.integer_coeffs(&factor);
        let content = num
            .iter()
            .chain(den.iter())
            .fold(Integer::new(), |acc, c| acc.gcd(c));
        let divide =
            |v: Vec<Integer>| -> Vec<Integer> { v.into_iter().map(|c| c / &content).collect() };
        (divide(num), divide(den))
    }

    /// Whether `G(−x) = −G(x)`.
    pub fn is_odd(&self) -> bool {
        let reflected = RationalMap::new(self.num.reflect(), self.den.reflect());
        reflected == -self
    }
}

/// A [`RationalMap`] with coefficients pre-converted to a number kind.
#[derive(Clone, Debug)]
pub struct LoweredMap<T> {
    num: Vec<T>,
    den: Vec<T>,
}

impl<T: Scalar> LoweredMap<T> {
    fn horner(coeffs: &[T], x: &T) -> T {
        let mut iter = coeffs.iter().rev();
        match iter.next() {
            Some(first) => iter.fold(first.clone(), |acc, c| acc.mul(x).add(c)),
            None => T::from_rational_like(&Rational::new(), x),
        }
    }

    pub fn numerator_at(&self, x: &T) -> T {
        Self::horner(&self.num, x)
    }

    pub fn denominator_at(&self, x: &T) -> T {
        Self::horner(&self.den, x)
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        let den = self.denominator_at(x);
        if den.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.numerator_at(x).div(&den))
    }
}

impl Add for &RationalMap {
    type Output = RationalMap;
    fn add(self, rhs: &RationalMap) -> RationalMap {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalMap::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalMap {
    type Output = RationalMap;
    fn sub(self, rhs: &RationalMap) -> RationalMap {
        self + &(-rhs)
    }
}

impl Mul for &RationalMap {
    type Output = RationalMap;
    fn mul(self, rhs: &RationalMap) -> RationalMap {
        RationalMap::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalMap {
    type Output = RationalMap;
    fn div(self, rhs: &RationalMap) -> RationalMap {
        assert!(!rhs.is_zero(), "division by the zero map");
        RationalMap::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalMap {
    type Output = RationalMap;
    fn neg(self) -> RationalMap {
        RationalMap {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

struct IntPoly<'a>(&'a [Integer]);

impl fmt::Display for IntPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(d, c)| {
                let mag = Integer::from(c.abs_ref());
                let unit = mag == 1;
                (d, *c < 0, mag, unit)
            });
        write_terms(f, terms)
    }
}

/// Canonical text form `(c_k x^k + …)/(d_j x^j + …)` with coprime integer
/// coefficients.
impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_normalized();
        write!(f, "({})/({})", IntPoly(&num), IntPoly(&den))
    }
}
