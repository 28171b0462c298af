use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::scalar::Scalar;

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending degree. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c.numer() == 0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// From integer coefficients in ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Poly::new(vec![c.into()])
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lead) => {
                let inv = Rational::from(lead.recip_ref());
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Multiplies by `xⁿ`.
    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::new(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = Rational::from(divisor.coeffs[dd].recip_ref());
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::new(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = Rational::from(&rem[i + dd] * &lead_inv);
            if *c.numer() != 0 {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= Rational::from(&c * dc);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| Rational::from(c * d as u64))
                .collect(),
        )
    }

    /// `self(inner(x))`.
    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Poly {
        let mut coeffs = vec![Rational::new()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| Rational::from(c / (i as u32 + 1))),
        );
        Poly::new(coeffs)
    }

    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    /// Horner evaluation in the number kind of `x`.
    pub fn eval<T: Scalar>(&self, x: &T) -> T {
        let zero = T::from_rational_like(&Rational::new(), x);
        self.coeffs
            .iter()
            .rev()
            .fold(zero, |acc, c| acc.mul(x).add(&T::from_rational_like(c, x)))
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| {
                    if d % 2 == 1 {
                        Rational::from(-c)
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    /// Least common multiple of the coefficient denominators.
    pub(crate) fn denominator_lcm(&self) -> Integer {
        self.coeffs
            .iter()
            .fold(Integer::from(1), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients after multiplying by `factor`, which must clear
    /// every denominator.
    pub(crate) fn integer_coeffs(&self, factor: &Rational) -> Vec<Integer> {
        self.coeffs
            .iter()
            .map(|c| {
                let v = Rational::from(c * factor);
                assert!(*v.denom() == 1, "factor does not clear denominators");
                v.into_numer_denom().0
            })
            .collect()
    }

    /// Square-free decomposition (Yun): returns `(s₁, s₂, …)` with
    /// `self = c·s₁·s₂²·s₃³⋯` and each `sᵢ` monic, square-free and pairwise
    /// coprime. Trailing entries are `1` where a multiplicity is absent.
    pub fn square_free_parts(&self) -> Vec<Poly> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut parts = Vec::new();
        loop {
            let s = b.gcd(&d);
            parts.push(s.clone());
            b = b.div_rem(&s).0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_rem(&s).0;
            d = &c - &b.derivative();
        }
        while parts.last().is_some_and(|p| p.degree() == Some(0)) {
            parts.pop();
        }
        parts
    }
}

fn zip_coeffs(a: &Poly, b: &Poly, f: impl Fn(&Rational, &Rational) -> Rational) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = Rational::new();
    Poly::new(
        (0..n)
            .map(|i| {
                f(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_coeffs(self, rhs, |a, b| Rational::from(a + b))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_coeffs(self, rhs, |a, b| Rational::from(a - b))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| Rational::from(-c)).collect())
    }
}

/// Writes `c·x^d` terms in descending degree, e.g. `3x^4 - 6x^2 - 1`.
pub(crate) fn write_terms<C: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, bool, C, bool)>,
) -> fmt::Result {
    // (degree, negative, |coefficient|, coefficient is one)
    let mut first = true;
    for (d, negative, magnitude, unit) in terms {
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        first = false;
        match d {
            0 => write!(f, "{magnitude}")?,
            _ => {
                if !unit {
                    write!(f, "{magnitude}")?;
                }
                write!(f, "x")?;
                if d > 1 {
                    write!(f, "^{d}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| *c.numer() != 0)
            .map(|(d, c)| {
                let mag = Rational::from(c.abs_ref());
                let unit = mag == 1;
                let text = if *mag.denom() == 1 {
                    mag.to_string()
                } else {
                    format!("({mag})")
                };
                (d, *c < 0, text, unit)
            });
        write_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[-1, 0, -6, 0, 3]).to_string(), "3x^4 - 6x^2 - 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(
            Poly::constant(Rational::from((3, 2)))
                .shift_up(1)
                .to_string(),
            "(3/2)x"
        );
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[1, 0, 1]) * &p(&[-2, 1]);
        let b = &p(&[1, 0, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 0, 1]));
        let (q, r) = a.div_rem(&p(&[1, 0, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn square_free() {
        // (x^2+1)^2 (x-1)
        let f = &(&p(&[1, 0, 1]) * &p(&[1, 0, 1])) * &p(&[-1, 1]);
        let parts = f.square_free_parts();
        assert_eq!(parts, vec![p(&[-1, 1]), p(&[1, 0, 1])]);
        assert_eq!(p(&[1, 0, 6, 0, 5]).square_free_parts().len(), 1);
    }

    #[test]
    fn compose_and_eval() {
        let sq = p(&[0, 0, 1]);
        let shifted = sq.compose(&p(&[1, 1]));
        assert_eq!(shifted, p(&[1, 2, 1]));
        assert_eq!(shifted.eval(&Rational::from(2)), 9);
        assert_eq!(shifted.eval(&3.0f64), 16.0);
    }

    proptest! {
        #[test]
        fn div_rem_reconstructs(a in prop::collection::vec(-20i64..20, 0..7),
                                b in prop::collection::vec(-20i64..20, 1..5)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
