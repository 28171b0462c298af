//! Any one-step iteration `H` is Newton's method on some `h`: solve
//! `h′/h = 1/(x − H(x))` and integrate termwise.
//!
//! `1/(x − H)` is `D/P` with `P = x·den − num`. Exact polynomial division
//! splits off a polynomial part (it integrates into `exp(p(x))`), and the
//! proper remainder is broken into partial fractions at the numerically
//! located roots of `P`. Root multiplicities come from an exact square-free
//! decomposition, so only the root positions are approximate.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::maps::{Poly, RationalMap};
use crate::precision::{guarded_bits, ten_to_minus};

/// `(x − root)^exponent`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerFactor {
    pub root: Complex,
    pub exponent: Complex,
}

/// `exp(coeff/(x − root))`, the trace of a double root of `x − H(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPole {
    pub root: Complex,
    pub coeff: Complex,
}

/// `h(x) = constant · ∏(x − rᵢ)^cᵢ · exp(p(x)) · ∏ exp(aⱼ/(x − sⱼ))`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredFunction {
    pub constant: Complex,
    pub factors: Vec<PowerFactor>,
    /// Exact polynomial in the exponent.
    pub exp_poly: Poly,
    pub exp_poles: Vec<ExpPole>,
}

impl FactoredFunction {
    /// `h′(x)/h(x)`, evaluated without forming any power.
    pub fn log_derivative(&self, x: &Complex) -> Complex {
        let bits = x.prec().0;
        let mut sum = self.exp_poly.derivative().eval(x);
        for f in &self.factors {
            let d = Complex::with_val(bits, x - &f.root);
            sum += Complex::with_val(bits, &f.exponent / &d);
        }
        for e in &self.exp_poles {
            let d = Complex::with_val(bits, x - &e.root);
            let d2 = Complex::with_val(bits, d.square_ref());
            sum -= Complex::with_val(bits, &e.coeff / &d2);
        }
        sum
    }

    /// `ln(h(x)/constant)` on the principal branch of each factor.
    fn log_unscaled(&self, x: &Complex) -> Complex {
        let bits = x.prec().0;
        let mut sum = self.exp_poly.eval(x);
        for f in &self.factors {
            let d = Complex::with_val(bits, x - &f.root);
            sum += Complex::with_val(bits, d.ln() * &f.exponent);
        }
        for e in &self.exp_poles {
            let d = Complex::with_val(bits, x - &e.root);
            sum += Complex::with_val(bits, &e.coeff / &d);
        }
        sum
    }

    /// `h(x)` itself (principal branches).
    pub fn eval(&self, x: &Complex) -> Complex {
        let bits = x.prec().0;
        Complex::with_val(bits, self.log_unscaled(x).exp() * &self.constant)
    }

    /// Sum of the power exponents; equals the residue of `1/(x − H)` at infinity.
    pub fn exponent_sum(&self) -> Complex {
        let bits = self.constant.prec().0;
        self.factors
            .iter()
            .fold(Complex::with_val(bits, 0), |acc, f| acc + &f.exponent)
    }

    /// `h` over the reals with recognisable rational coefficients, such as
    /// `(x^2 + 1)^(1) · (5x^2 + 1)^(-1/5)`, up to a constant. `None` if some
    /// factor is not real or not recognised.
    pub fn real_form(&self, digits: u32) -> Option<String> {
        let bits = self.constant.prec().0;
        let tol = ten_to_minus(digits as i32 / 2, bits);
        let rational = |x: &Float| recognize_rational(x, 10_000, &tol);
        let exponent = |e: &Complex| {
            if e.imag().clone().abs() > tol {
                return None;
            }
            rational(e.real()).map(|q| q.to_string())
        };
        let quads = self.real_quadratics(&tol);
        let mut parts = Vec::new();
        let paired = 2 * quads.len();
        for (b, c, e) in &quads {
            let poly = Poly::new(vec![rational(c)?, rational(b)?, Rational::from(1)]);
            let scale = Rational::from(poly.denominator_lcm());
            let poly = poly.scale(&scale);
            let e = rational(e)?;
            parts.push(format!("({poly})^({e})"));
        }
        let mut real_roots = 0;
        for f in &self.factors {
            if f.root.imag().clone().abs() > tol {
                continue;
            }
            real_roots += 1;
            let r = rational(f.root.real())?;
            let lin = Poly::new(vec![Rational::from(-&r), Rational::from(1)]);
            let lin = lin.scale(&Rational::from(lin.denominator_lcm()));
            parts.push(format!("({lin})^({})", exponent(&f.exponent)?));
        }
        if paired + real_roots != self.factors.len() || !self.exp_poles.is_empty() {
            return None;
        }
        if !self.exp_poly.is_zero() {
            parts.push(format!("exp({})", self.exp_poly));
        }
        Some(parts.join(" · "))
    }

    /// Pairs of conjugate roots with equal real exponents, folded into real
    /// quadratics: `(x² + b·x + c)^e` as `(b, c, e)`.
    pub fn real_quadratics(&self, tol: &Float) -> Vec<(Float, Float, Float)> {
        let mut used = vec![false; self.factors.len()];
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if used[i] || f.root.imag().clone().abs() <= *tol {
                continue;
            }
            let partner = (i + 1..self.factors.len()).find(|&j| {
                !used[j]
                    && close(&self.factors[j].root, &conj(&f.root), tol)
                    && close(&self.factors[j].exponent, &f.exponent, tol)
            });
            if let (Some(j), true) = (partner, f.exponent.imag().clone().abs() <= *tol) {
                used[i] = true;
                used[j] = true;
                let bits = f.root.prec().0;
                let b = Float::with_val(bits, f.root.real() * -2i32);
                let c = Float::with_val(bits, f.root.norm_ref());
                out.push((b, c, f.exponent.real().clone()));
            }
        }
        out
    }
}

/// Best rational approximation with denominator at most `max_den`, if it is
/// within `tol` of `x` (continued fractions).
pub fn recognize_rational(x: &Float, max_den: u64, tol: &Float) -> Option<Rational> {
    let bits = x.prec();
    let mut rest = x.clone();
    let (mut p0, mut q0) = (rug::Integer::from(1), rug::Integer::new());
    let (mut p1, mut q1) = (rug::Integer::new(), rug::Integer::from(1));
    for _ in 0..64 {
        let a = rest.to_integer_round(rug::float::Round::Down)?.0;
        let p2 = rug::Integer::from(&a * &p0) + &p1;
        let q2 = rug::Integer::from(&a * &q0) + &q1;
        if q2 > max_den {
            break;
        }
        (p1, q1) = (
            std::mem::replace(&mut p0, p2),
            std::mem::replace(&mut q0, q2),
        );
        let candidate = Rational::from((p0.clone(), q0.clone()));
        if Float::with_val(bits, x - &candidate).abs() <= *tol {
            return Some(candidate);
        }
        let frac = Float::with_val(bits, &rest - &a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    None
}

fn conj(z: &Complex) -> Complex {
    Complex::with_val(z.prec(), z.conj_ref())
}

fn close(a: &Complex, b: &Complex, tol: &Float) -> bool {
    let bits = a.prec().0;
    Float::with_val(bits, Complex::with_val(a.prec(), a - b).abs_ref()) <= *tol
}

/// Renders `a ± bi` with `sig` significant digits, dropping parts that are
/// negligible next to the other.
pub fn format_complex(z: &Complex, sig: usize) -> String {
    let (re, im) = (z.real().to_f64(), z.imag().to_f64());
    let scale = re.abs().max(im.abs());
    let eps = scale * 10f64.powi(-(sig as i32));
    let num = |v: f64| {
        let s = format!("{:.*}", sig, v);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".to_string()
        } else {
            s
        }
    };
    let re_zero = re.abs() <= eps || scale == 0.0;
    let im_zero = im.abs() <= eps;
    match (re_zero, im_zero) {
        (_, true) if re_zero => "0".to_string(),
        (_, true) => num(re),
        (true, false) => format!("{}i", num(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{} {} {}i", num(re), sign, num(im.abs()))
        }
    }
}

impl fmt::Display for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = 10;
        let mut parts = vec![format!("({})", format_complex(&self.constant, sig))];
        for factor in &self.factors {
            parts.push(format!(
                "(x - ({}))^({})",
                format_complex(&factor.root, sig),
                format_complex(&factor.exponent, sig)
            ));
        }
        for e in &self.exp_poles {
            parts.push(format!(
                "exp(({})/(x - ({})))",
                format_complex(&e.coeff, sig),
                format_complex(&e.root, sig)
            ));
        }
        if !self.exp_poly.is_zero() {
            parts.push(format!("exp({})", self.exp_poly));
        }
        write!(f, "{}", parts.join(" · "))
    }
}

/// All complex roots of a square-free polynomial by Durand–Kerner, then
/// polished with Newton steps. Works at `bits`.
pub(crate) fn squarefree_roots(p: &Poly, bits: u32, tol: &Float) -> Vec<Complex> {
    let p = p.monic();
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    let lift = |c: &Rational| Complex::with_val(bits, c);
    let coeffs: Vec<Complex> = p.coeffs().iter().map(lift).collect();
    let eval = |x: &Complex| {
        coeffs
            .iter()
            .rev()
            .fold(Complex::with_val(bits, 0), |acc, c| acc * x + c)
    };
    if n == 1 {
        return vec![Complex::with_val(bits, -&coeffs[0])];
    }
    // Cauchy bound for the starting circle.
    let radius = coeffs[..n]
        .iter()
        .map(|c| Float::with_val(bits, c.abs_ref()).to_f64())
        .fold(0.0, f64::max)
        + 1.0;
    let seed = Complex::with_val(bits, (0.4, 0.9));
    let mut roots: Vec<Complex> = (0..n)
        .map(|k| Complex::with_val(bits, seed.clone().pow(k as u32) * radius))
        .collect();
    for _ in 0..2000 {
        let mut worst = Float::with_val(bits, 0);
        for i in 0..n {
            let mut den = Complex::with_val(bits, 1);
            for j in 0..n {
                if i != j {
                    den *= Complex::with_val(bits, &roots[i] - &roots[j]);
                }
            }
            let step = Complex::with_val(bits, eval(&roots[i]) / &den);
            let size = Float::with_val(bits, step.abs_ref());
            if size > worst {
                worst = size;
            }
            roots[i] -= step;
        }
        if worst < *tol {
            break;
        }
    }
    let dp: Vec<Complex> = p.derivative().coeffs().iter().map(lift).collect();
    let eval_d = |x: &Complex| {
        dp.iter()
            .rev()
            .fold(Complex::with_val(bits, 0), |acc, c| acc * x + c)
    };
    for r in &mut roots {
        for _ in 0..3 {
            let d = eval_d(r);
            if d.is_zero() {
                break;
            }
            *r -= Complex::with_val(bits, eval(r) / d);
        }
    }
    roots
}

/// The distinct roots of `p` with their exact multiplicities.
pub(crate) fn roots_with_multiplicity(p: &Poly, bits: u32, tol: &Float) -> Vec<(Complex, usize)> {
    p.square_free_parts()
        .iter()
        .enumerate()
        .flat_map(|(j, part)| {
            squarefree_roots(part, bits, tol)
                .into_iter()
                .map(move |r| (r, j + 1))
        })
        .collect()
}

/// Builds the `h` for which Newton's method is `H`, normalised so `h(1) = 1`
/// unless `1` is a root or pole.
pub fn newton_disguise(h_map: &RationalMap, digits: u32) -> Result<FactoredFunction> {
    let bits = guarded_bits(digits);
    let tol = ten_to_minus(digits as i32 + 5, bits);
    let p = h_map.fixed_point_polynomial();
    if p.is_zero() {
        return Err(Error::DegenerateIteration);
    }
    let (quotient, remainder) = h_map.den().div_rem(&p);
    let exp_poly = quotient.integral();

    let roots = roots_with_multiplicity(&p, bits, &tol);
    if let Some((_, m)) = roots.iter().find(|(_, m)| *m > 2) {
        return Err(Error::UnsupportedMultiplicity(*m));
    }
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let mut factors = Vec::new();
    let mut exp_poles = Vec::new();
    for (r, mult) in roots {
        let rem = remainder.eval(&r);
        if mult == 1 {
            let exponent = Complex::with_val(bits, rem / d1.eval(&r));
            factors.push(PowerFactor { root: r, exponent });
        } else {
            // P = (x − r)²·g with g(r) = P″(r)/2 and g′(r) = P‴(r)/6.
            let g = Complex::with_val(bits, d2.eval(&r) / 2u32);
            let dg = Complex::with_val(bits, d3.eval(&r) / 6u32);
            let drem = remainder.derivative().eval(&r);
            let a = Complex::with_val(bits, &rem / &g);
            let top = Complex::with_val(bits, &drem * &g) - Complex::with_val(bits, &rem * &dg);
            let b = Complex::with_val(bits, top / Complex::with_val(bits, g.square_ref()));
            factors.push(PowerFactor {
                root: r.clone(),
                exponent: b,
            });
            exp_poles.push(ExpPole { root: r, coeff: -a });
        }
    }

    let mut h = FactoredFunction {
        constant: Complex::with_val(bits, 1),
        factors,
        exp_poly,
        exp_poles,
    };
    let one = Complex::with_val(bits, 1);
    let one_is_special = h
        .factors
        .iter()
        .any(|f| close(&f.root, &one, &ten_to_minus(digits as i32 / 2, bits)));
    if !one_is_special {
        h.constant = Complex::with_val(bits, -h.log_unscaled(&one)).exp();
    }
    Ok(h)
}

/// Largest `|x − h(x)/h′(x) − H(x)|` over `sample_count` seeded complex points
/// in `[−2, 2]²`, skipping points next to roots or poles.
pub fn verify_disguise(
    h: &FactoredFunction,
    h_map: &RationalMap,
    sample_count: usize,
    digits: u32,
) -> Result<Float> {
    let bits = guarded_bits(digits);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lowered = h_map.lower(&Complex::with_val(bits, 0));
    let mut worst = Float::with_val(bits, 0);
    let mut taken = 0;
    while taken < sample_count {
        let x = Complex::with_val(bits, (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        let near_root = h
            .factors
            .iter()
            .map(|f| &f.root)
            .chain(h.exp_poles.iter().map(|e| &e.root))
            .any(|r| Float::with_val(bits, Complex::with_val(bits, &x - r).abs_ref()) < 1e-3);
        if near_root {
            continue;
        }
        let Ok(target) = lowered.eval(&x) else {
            continue;
        };
        let ld = h.log_derivative(&x);
        if ld.is_zero() {
            continue;
        }
        let newton = Complex::with_val(bits, &x - Complex::with_val(bits, ld.recip_ref()));
        let err = Float::with_val(bits, Complex::with_val(bits, newton - target).abs_ref());
        if err > worst {
            worst = err;
        }
        taken += 1;
    }
    Ok(worst)
}

/// Exact residue sum of `1/(x − H(x))` over its finite poles, read off the
/// leading coefficients: the `x^{deg P − 1}` coefficient of the remainder
/// over the leading coefficient of `P`.
pub fn residue_sum(h_map: &RationalMap) -> Result<Rational> {
    let p = h_map.fixed_point_polynomial();
    let deg = p.degree().ok_or(Error::DegenerateIteration)?;
    if deg == 0 {
        return Ok(Rational::new());
    }
    let remainder = h_map.den().div_rem(&p).1;
    Ok(Rational::from(
        &remainder.coeff(deg - 1) / p.leading().expect("nonzero"),
    ))
}

/// Classification of a fixed point by its multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Superattracting,
    Attracting,
    Indifferent,
    Repelling,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointInfo {
    pub location: Complex,
    pub multiplier: Complex,
    pub classification: Stability,
}

/// Finite fixed points of `G` with multipliers `G′` (exact derivative map,
/// evaluated numerically). `|μ|` within `10^(−digits/2)` of 0 or 1 counts as
/// superattracting or indifferent.
pub fn fixed_points(g: &RationalMap, digits: u32) -> Result<Vec<FixedPointInfo>> {
    let bits = guarded_bits(digits);
    let p = g.fixed_point_polynomial();
    if p.is_zero() {
        return Err(Error::DegenerateIteration);
    }
    let root_tol = ten_to_minus(digits as i32 + 5, bits);
    let class_tol = ten_to_minus(digits as i32 / 2, bits);
    let dg = g.derivative();
    let mut out = Vec::new();
    for (r, _) in roots_with_multiplicity(&p, bits, &root_tol) {
        let Ok(multiplier) = dg.eval(&r) else {
            continue;
        };
        let size = Float::with_val(bits, multiplier.abs_ref());
        let classification = if size < class_tol {
            Stability::Superattracting
        } else if Float::with_val(bits, &size - 1u32).abs() < class_tol {
            Stability::Indifferent
        } else if size < 1 {
            Stability::Attracting
        } else {
            Stability::Repelling
        };
        out.push(FixedPointInfo {
            location: r,
            multiplier,
            classification,
        });
    }
    Ok(out)
}

/// Exponent of the algebraic singularity `S(θ) ~ θ^{−α}` forced by
/// `S(mθ) = G(S(θ))` when `G(x) ~ λx` at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum SingularityExponent {
    /// `λ ∈ (0, 1)`: `m^{−α} = λ`.
    Algebraic { lambda: Rational, alpha: Float },
    /// Any other `λ`: the matching `m^{−α} = λ` has no positive solution.
    NoAlgebraicSolution { lambda: Rational },
}

pub fn singularity_exponent(g: &RationalMap, m: u32) -> Result<SingularityExponent> {
    let (num_deg, den_deg) = (g.num().degree(), g.den().degree());
    match (num_deg, den_deg) {
        (Some(a), Some(b)) if a == b + 1 => {}
        _ => {
            return Err(Error::NotApplicable(format!(
                "{g} does not grow linearly at infinity"
            )))
        }
    }
    let lambda =
        Rational::from(g.num().leading().expect("nonzero") / g.den().leading().expect("nonzero"));
    if lambda <= 0 || lambda >= 1 || m < 2 {
        return Ok(SingularityExponent::NoAlgebraicSolution { lambda });
    }
    let bits = 256;
    let ln_lambda = Float::with_val(bits, &lambda).ln();
    let ln_m = Float::with_val(bits, m).ln();
    let alpha = Float::with_val(bits, -ln_lambda / ln_m);
    Ok(SingularityExponent::Algebraic { lambda, alpha })
}
