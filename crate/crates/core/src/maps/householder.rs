use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::poly::Poly;
use super::rational_map::RationalMap;

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        *self.re.numer() == 0 && *self.im.numer() == 0
    }

    pub fn is_real(&self) -> bool {
        *self.im.numer() == 0
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussRational::new(re, im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

/// Polynomial over the Gaussian rationals, ascending degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussPoly(pub Vec<GaussRational>);

impl GaussPoly {
    fn trimmed(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(GaussRational::is_zero) {
            coeffs.pop();
        }
        GaussPoly(coeffs)
    }

    /// `x − a`.
    pub fn linear(a: &GaussRational) -> Self {
        GaussPoly::trimmed(vec![-a, GaussRational::new(1, 0)])
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(GaussPoly(vec![GaussRational::new(1, 0)]), |acc, _| {
            &acc * self
        })
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        GaussPoly::trimmed(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(GaussRational::is_real)
    }

    /// The real part as an ordinary polynomial.
    pub fn real_part(&self) -> Poly {
        Poly::new(self.0.iter().map(|c| c.re.clone()).collect())
    }
}

impl Mul for &GaussPoly {
    type Output = GaussPoly;
    fn mul(self, rhs: &GaussPoly) -> GaussPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return GaussPoly::default();
        }
        let mut out = vec![GaussRational::default(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        GaussPoly::trimmed(out)
    }
}

impl Sub for &GaussPoly {
    type Output = GaussPoly;
    fn sub(self, rhs: &GaussPoly) -> GaussPoly {
        let n = self.0.len().max(rhs.0.len());
        let zero = GaussRational::default();
        GaussPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

/// The `k`-th derivative of `1/(x² + 1)`.
#[derive(Clone, Debug)]
pub struct InvFDerivative {
    /// Numerator over `(x² + 1)^(k+1)` before discarding imaginary parts,
    /// `(i/2)(−1)^k k! [(x − i)^(k+1) − (x + i)^(k+1)]`.
    pub gaussian_numerator: GaussPoly,
    /// Reduced real rational function.
    pub map: RationalMap,
}

/// `(1/f)^(k)` for `f = x² + 1` via the partial fractions
/// `1/f = (i/2)/(x + i) − (i/2)/(x − i)` and `dᵏ/dxᵏ (x − a)⁻¹ = (−1)ᵏ k!/(x − a)^(k+1)`.
pub fn inv_f_derivative(k: u32) -> InvFDerivative {
    let i = GaussRational::new(0, 1);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let factorial = Integer::from(Integer::factorial(k));
    let coeff = GaussRational::new(0, Rational::from((factorial * sign, Integer::from(2))));
    let x_minus_i = GaussPoly::linear(&i);
    let x_plus_i = GaussPoly::linear(&-&i);
    let numerator = (&x_minus_i.pow(k + 1) - &x_plus_i.pow(k + 1)).scale(&coeff);
    debug_assert!(numerator.is_real(), "imaginary parts must cancel");
    let denominator = Poly::from_ints(&[1, 0, 1]).pow(k + 1);
    InvFDerivative {
        map: RationalMap::new(numerator.real_part(), denominator),
        gaussian_numerator: numerator,
    }
}

/// The Householder map of order `k` for `f = x² + 1`:
/// `x + k·(1/f)^(k−1)(x) / (1/f)^(k)(x)`. Order 1 is Newton, order 2 Halley.
pub fn householder_map(k: u32) -> RationalMap {
    assert!(k >= 1, "Householder order starts at 1");
    let lower = inv_f_derivative(k - 1).map;
    let upper = inv_f_derivative(k).map;
    let ratio = &lower / &upper;
    &RationalMap::identity() + &(&RationalMap::constant(k) * &ratio)
}

pub fn newton_map() -> RationalMap {
    householder_map(1)
}

pub fn halley_map() -> RationalMap {
    householder_map(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn derivatives_of_inverse() {
        assert_eq!(
            inv_f_derivative(0).map,
            RationalMap::new(p(&[1]), p(&[1, 0, 1]))
        );
        assert_eq!(
            inv_f_derivative(1).map,
            RationalMap::new(p(&[0, -2]), p(&[1, 0, 1]).pow(2))
        );
        assert_eq!(
            inv_f_derivative(2).map,
            RationalMap::new(p(&[-2, 0, 6]), p(&[1, 0, 1]).pow(3))
        );
    }

    #[test]
    fn derivatives_match_repeated_differentiation() {
        let mut direct = RationalMap::new(p(&[1]), p(&[1, 0, 1]));
        for k in 0..=12 {
            let built = inv_f_derivative(k);
            assert!(built.gaussian_numerator.is_real(), "k={k}");
            assert_eq!(built.map, direct, "k={k}");
            direct = direct.derivative();
        }
    }

    #[test]
    fn printed_maps() {
        assert_eq!(householder_map(1).to_string(), "(x^2 - 1)/(2x)");
        assert_eq!(householder_map(2).to_string(), "(x^3 - 3x)/(3x^2 - 1)");
        assert_eq!(
            householder_map(3).to_string(),
            "(x^4 - 6x^2 + 1)/(4x^3 - 4x)"
        );
    }

    #[test]
    fn degrees_and_oddness() {
        for k in 1..=8u32 {
            let m = householder_map(k);
            assert_eq!(m.num().degree(), Some(k as usize + 1), "k={k}");
            assert_eq!(m.den().degree(), Some(k as usize), "k={k}");
            assert!(m.is_odd(), "k={k}");
        }
    }

    #[test]
    fn two_newton_steps_are_order_three() {
        assert_eq!(newton_map().compose(&newton_map()), householder_map(3));
        assert_eq!(newton_map().iterate(3), householder_map(7));
        assert_eq!(halley_map().iterate(2), householder_map(8));
    }

    #[test]
    fn fixed_points_are_roots_and_cot_of_j_pi_over_k() {
        // x·den − num = c·(x² + 1)·R(x) where R has the k − 1 real roots
        // cot(jπ/k): the angles with kθ ≡ 0 mod π.
        use rug::float::Constant;
        use rug::Float;
        let f = p(&[1, 0, 1]);
        for k in 1..=8u32 {
            let fixed = householder_map(k).fixed_point_polynomial();
            let (rest, r) = fixed.div_rem(&f);
            assert!(r.is_zero(), "k={k}");
            assert!(!rest.div_rem(&f).1.is_zero(), "k={k}: ±i must be simple");
            assert_eq!(rest.degree(), Some(k as usize - 1), "k={k}");
            for j in 1..k {
                let pi = Float::with_val(200, Constant::Pi);
                let theta = pi * j / k;
                let x = Float::with_val(200, theta.tan_ref()).recip();
                let value = rest.eval(&x);
                assert!(value.abs() < 1e-50, "k={k}, j={j}");
            }
        }
    }
}
