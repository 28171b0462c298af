//! Closed-form solutions `xₙ = cot((k+1)ⁿθ₀)` and their complex-seed
//! counterparts.
//!
//! Angles are reduced exactly before anything is evaluated in floating
//! point, so step 200 is as accurate as step 2.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::{secant_angle, RationalAngle};
use crate::maps::secant_step;
use crate::method::Method;
use crate::precision::{digits_to_bits, guarded_bits};

/// Which formula evaluates `cot(πt)` most accurately.
enum Reduced {
    /// `sign / tan(πs)`, for `s ∈ (0, 1/4]`.
    Recip { s: Float, negate: bool },
    /// `tan(πu)` with `u = 1/2 − t ∈ (−1/4, 1/4)`.
    Tan { u: Float },
}

fn eval_reduced(r: Reduced, bits: u32) -> Float {
    let pi = Float::with_val(bits, Constant::Pi);
    match r {
        Reduced::Recip { s, negate } => {
            let c = Float::with_val(bits, pi * s).tan().recip();
            if negate {
                -c
            } else {
                c
            }
        }
        Reduced::Tan { u } => Float::with_val(bits, pi * u).tan(),
    }
}

/// `cot(πt)` for a big-float `t`, taken mod 1.
///
/// Computed with guard digits and returned at `digits` plus guard precision.
pub fn cot_hp(t: &Float, digits: u32) -> Result<Float> {
    let bits = guarded_bits(digits);
    // Reduce into [0, 1) without rounding: t − ⌊t⌋ is exact in t's precision.
    let t = Float::with_val(t.prec(), t - Float::with_val(t.prec(), t.floor_ref()));
    if t.is_zero() {
        return Err(Error::Pole(format!("cot(pi*{t})")));
    }
    let work = bits.max(t.prec()) + 2;
    let reduced = if t <= 0.25 {
        Reduced::Recip {
            s: Float::with_val(work, &t),
            negate: false,
        }
    } else if t < 0.75 {
        Reduced::Tan {
            u: Float::with_val(work, 0.5 - &t),
        }
    } else {
        Reduced::Recip {
            s: Float::with_val(work, 1 - &t),
            negate: true,
        }
    };
    Ok(Float::with_val(bits, eval_reduced(reduced, bits)))
}

/// `cot(πt)` for an exact rational angle; the case split is done exactly.
pub fn cot_rational(t: &RationalAngle, digits: u32) -> Result<Float> {
    let bits = guarded_bits(digits);
    if t.is_zero() {
        return Err(Error::Pole(format!("cot(pi*{t})")));
    }
    let q = t.as_rational();
    let quarter = Rational::from((1, 4));
    let three_quarters = Rational::from((3, 4));
    let reduced = if *q <= quarter {
        Reduced::Recip {
            s: Float::with_val(bits, q),
            negate: false,
        }
    } else if *q < three_quarters {
        let u = Rational::from((1, 2)) - q.clone();
        Reduced::Tan {
            u: Float::with_val(bits, &u),
        }
    } else {
        let s = Rational::from(1) - q.clone();
        Reduced::Recip {
            s: Float::with_val(bits, &s),
            negate: true,
        }
    };
    Ok(eval_reduced(reduced, bits))
}

/// Value predicted by the closed form at step `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    Value(Float),
    /// The reduced angle is `0`: the iterate is at the pole.
    BlowUp,
}

impl ClosedForm {
    pub fn value(&self) -> Option<&Float> {
        match self {
            ClosedForm::Value(v) => Some(v),
            ClosedForm::BlowUp => None,
        }
    }
}

fn check_seeds(method: Method, t1: Option<&RationalAngle>) -> Result<()> {
    match (method, t1) {
        (Method::Schroeder3, _) => Err(Error::NoClosedForm(method.to_string())),
        (Method::Secant, None) => Err(Error::MissingSecondSeed(method.to_string())),
        (Method::Householder(_), Some(_)) => Err(Error::UnexpectedSecondSeed(method.to_string())),
        _ => Ok(()),
    }
}

/// The exact angle `θₙ/π` of step `n`.
pub fn closed_form_angle(
    method: Method,
    n: u64,
    t0: &RationalAngle,
    t1: Option<&RationalAngle>,
) -> Result<RationalAngle> {
    check_seeds(method, t1)?;
    Ok(match method {
        Method::Householder(k) => t0.shift_n(k + 1, n),
        Method::Secant => secant_angle(n, t0, t1.expect("checked")),
        Method::Schroeder3 => unreachable!("rejected by check_seeds"),
    })
}

/// `xₙ = cot(θₙ)` with `θₙ` reduced exactly first.
pub fn closed_form_iterate(
    method: Method,
    n: u64,
    t0: &RationalAngle,
    t1: Option<&RationalAngle>,
    digits: u32,
) -> Result<ClosedForm> {
    let angle = closed_form_angle(method, n, t0, t1)?;
    if angle.is_zero() {
        return Ok(ClosedForm::BlowUp);
    }
    cot_rational(&angle, digits).map(ClosedForm::Value)
}

/// Iterates the actual map in big-float from `cot(πt0)` and returns the
/// largest discrepancy from the closed form over `n ≤ n_max`.
pub fn verify_theorem(
    method: Method,
    t0: &RationalAngle,
    t1: Option<&RationalAngle>,
    n_max: u64,
    digits: u32,
) -> Result<Float> {
    let bits = guarded_bits(digits);
    let mut oracle = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        match closed_form_iterate(method, n, t0, t1, digits)? {
            ClosedForm::Value(v) => oracle.push(v),
            ClosedForm::BlowUp => return Err(Error::OrbitBlowsUp { step: n as usize }),
        }
    }
    let x0 = Float::with_val(bits, &oracle[0]);
    let mut worst = Float::with_val(bits, 0);
    let mut track = |n: usize, x: &Float| {
        let err = Float::with_val(bits, x - &oracle[n]).abs();
        if err > worst {
            worst = err;
        }
    };
    match method {
        Method::Secant => {
            let mut prev = x0;
            if n_max == 0 {
                return Ok(worst);
            }
            let mut curr = Float::with_val(bits, &oracle[1]);
            for n in 2..=n_max as usize {
                let next = secant_step(&prev, &curr)?;
                track(n, &next);
                prev = std::mem::replace(&mut curr, next);
            }
        }
        _ => {
            let map = method.map().expect("one-step method").lower(&x0);
            let mut x = x0;
            for n in 1..=n_max as usize {
                x = map.eval(&x)?;
                track(n, &x);
            }
        }
    }
    Ok(worst)
}

/// `θ = α + iβ` with `cot θ = x₀` and `0 ≤ α < π`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexAngle {
    pub alpha: Float,
    pub beta: Float,
}

impl ComplexAngle {
    pub fn to_complex(&self) -> Complex {
        Complex::with_val(self.alpha.prec(), (&self.alpha, &self.beta))
    }
}

/// Inverts `cot θ = x₀` via `e^{2iθ} = (x₀ + i)/(x₀ − i)`, principal branch,
/// with `α` folded into `[0, π)`. Works at the precision of `x0`.
pub fn complex_theta(x0: &Complex) -> Result<ComplexAngle> {
    let bits = x0.prec().0.max(x0.prec().1);
    let i = Complex::with_val(bits, (0, 1));
    let plus = Complex::with_val(bits, x0 + &i);
    let minus = Complex::with_val(bits, x0 - &i);
    if plus.is_zero() || minus.is_zero() {
        return Err(Error::AtRoot);
    }
    let w = Complex::with_val(bits, &plus / &minus);
    let pi = Float::with_val(bits, Constant::Pi);
    let mut alpha = Float::with_val(bits, w.arg_ref()) / 2u32;
    if alpha < 0 {
        alpha += &pi;
    }
    if alpha >= pi {
        alpha -= &pi;
    }
    let ratio = Float::with_val(bits, plus.abs_ref()) / Float::with_val(bits, minus.abs_ref());
    let beta = -ratio.ln() / 2u32;
    Ok(ComplexAngle { alpha, beta })
}

/// Deviations of `xₙ` from the two roots, from the closed form with
/// `M = (k+1)ⁿ`: `xₙ + i = e^{iMθ}/sin(Mθ)`, `xₙ − i = e^{−iMθ}/sin(Mθ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationPair {
    pub plus: Complex,
    pub minus: Complex,
}

pub fn deviation_pair(k: u32, n: u32, theta: &ComplexAngle, digits: u32) -> Result<DeviationPair> {
    let m = Integer::from(k + 1).pow(n);
    // α·M must stay accurate mod π, so carry the bits M shifts out.
    let bits = guarded_bits(digits) + m.significant_bits();
    let alpha = Float::with_val(bits, &theta.alpha);
    let beta = Float::with_val(bits, &theta.beta);
    let phi = Complex::with_val(bits, (alpha * &m, beta * &m));
    let sin = Complex::with_val(bits, phi.sin_ref());
    if sin.is_zero() {
        return Err(Error::Pole(format!("sin({phi})")));
    }
    let i_phi = Complex::with_val(bits, &phi * Complex::with_val(bits, (0, 1)));
    let e_plus = Complex::with_val(bits, i_phi.exp_ref());
    let e_minus = Complex::with_val(bits, (-i_phi).exp());
    let out_bits = digits_to_bits(digits + crate::precision::GUARD_DIGITS);
    Ok(DeviationPair {
        plus: Complex::with_val(out_bits, e_plus / &sin),
        minus: Complex::with_val(out_bits, e_minus / &sin),
    })
}

/// Where an iteration from a complex seed ends up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basin {
    PlusI,
    MinusI,
    /// Real seeds stay real and cannot converge.
    RealLine,
}

/// Half-plane rule for Householder methods.
pub fn predict_basin(x0: &Complex) -> Basin {
    let im = x0.imag();
    if im.is_sign_positive() && !im.is_zero() {
        Basin::PlusI
    } else if im.is_sign_negative() && !im.is_zero() {
        Basin::MinusI
    } else {
        Basin::RealLine
    }
}

/// Iterates a one-step method from a complex seed at `digits` precision.
pub fn iterate_complex(
    method: Method,
    x0: &Complex,
    steps: usize,
    digits: u32,
) -> Result<Vec<Complex>> {
    let map = method
        .map()
        .ok_or_else(|| Error::NotApplicable(format!("{method} is not a one-step map")))?;
    let bits = guarded_bits(digits);
    let x = Complex::with_val(bits, x0);
    let lowered = map.lower(&x);
    let mut out = vec![x];
    for _ in 0..steps {
        let next = lowered.eval(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

impl std::fmt::Display for ComplexAngle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}i", self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::classify_orbit;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn angle(p: i64, q: i64) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    fn c(re: f64, im: f64, digits: u32) -> Complex {
        Complex::with_val(guarded_bits(digits), (re, im))
    }

    #[test]
    fn cot_examples() {
        let bits = digits_to_bits(40);
        let quarter = Float::with_val(bits, 0.25);
        assert!(close(&cot_hp(&quarter, 40).unwrap(), 1.0, 1e-38));
        let third = Float::with_val(bits, 1) / 3u32;
        let root3_over_3 = Float::with_val(bits, 3).sqrt() / 3u32;
        let err = Float::with_val(bits, cot_hp(&third, 40).unwrap() - &root3_over_3).abs();
        assert!(err < 1e-38);
        assert!(cot_hp(&Float::with_val(bits, 0.5), 40).unwrap().is_zero());
        assert!(matches!(
            cot_hp(&Float::with_val(bits, 0), 40),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            cot_hp(&Float::with_val(bits, 1), 40),
            Err(Error::Pole(_))
        ));
        assert!(cot_rational(&angle(1, 2), 40).unwrap().is_zero());
        assert!(close(&cot_rational(&angle(3, 4), 40).unwrap(), -1.0, 1e-38));
    }

    #[test]
    fn cot_is_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bits = digits_to_bits(50);
        for _ in 0..50 {
            let t = Float::with_val(bits, rng.gen_range(1e-6..1.0 - 1e-6));
            let a = cot_hp(&t, 50).unwrap();
            let b = cot_hp(&Float::with_val(bits, 1 - &t), 50).unwrap();
            let scale = Float::with_val(bits, a.abs_ref()).max(&Float::with_val(bits, 1));
            assert!(Float::with_val(bits, &a + &b).abs() / scale < 1e-48);
        }
    }

    #[test]
    fn closed_form_examples() {
        let v = closed_form_iterate(Method::NEWTON, 2, &angle(1, 3), None, 40).unwrap();
        assert!(close(v.value().unwrap(), 0.5773502691896258, 1e-15));
        assert_eq!(
            closed_form_iterate(Method::HALLEY, 2, &angle(1, 9), None, 40).unwrap(),
            ClosedForm::BlowUp
        );
        assert_eq!(
            closed_form_iterate(Method::Secant, 4, &angle(1, 4), Some(&angle(1, 2)), 40).unwrap(),
            ClosedForm::BlowUp
        );
        assert!(matches!(
            closed_form_iterate(Method::Schroeder3, 1, &angle(1, 3), None, 40),
            Err(Error::NoClosedForm(_))
        ));
        assert!(matches!(
            closed_form_iterate(Method::Secant, 1, &angle(1, 3), None, 40),
            Err(Error::MissingSecondSeed(_))
        ));
    }

    #[test]
    fn angle_reduction_keeps_late_steps_accurate() {
        // 1/7 under tripling has period 6, so step 198 equals step 0.
        let late = closed_form_iterate(Method::HALLEY, 198, &angle(1, 7), None, 40).unwrap();
        let early = closed_form_iterate(Method::HALLEY, 0, &angle(1, 7), None, 40).unwrap();
        assert_eq!(late, early);
    }

    #[test]
    fn theorem_examples() {
        let err = verify_theorem(Method::Householder(3), &angle(1, 7), None, 10, 60).unwrap();
        assert!(err < 1e-40, "{err}");
        let err = verify_theorem(Method::NEWTON, &angle(1, 3), None, 2, 50).unwrap();
        assert!(err < 1e-45, "{err}");
        let err = verify_theorem(Method::Secant, &angle(1, 8), Some(&angle(1, 2)), 12, 60).unwrap();
        assert!(err < 1e-40, "{err}");
        assert!(matches!(
            verify_theorem(Method::HALLEY, &angle(1, 9), None, 5, 40),
            Err(Error::OrbitBlowsUp { step: 2 })
        ));
    }

    #[test]
    fn theorem_holds_for_small_denominators() {
        for k in 1..=5u32 {
            for q in 2..=30i64 {
                for p in 1..q {
                    if rug::Integer::from(p).gcd(&rug::Integer::from(q)) != 1 {
                        continue;
                    }
                    let t0 = angle(p, q);
                    if classify_orbit(&t0, k + 1)
                        .blowup_step()
                        .is_some_and(|s| s <= 12)
                    {
                        continue;
                    }
                    let err = verify_theorem(Method::Householder(k), &t0, None, 12, 60).unwrap();
                    assert!(err < 1e-30, "k={k}, t0={t0}: {err}");
                }
            }
        }
    }

    #[test]
    fn complex_theta_examples() {
        let pi = Float::with_val(200, Constant::Pi);
        let th = complex_theta(&c(1.0, 0.0, 40)).unwrap();
        assert!(Float::with_val(200, &th.alpha - Float::with_val(200, &pi / 4u32)).abs() < 1e-40);
        assert!(th.beta.is_zero());
        let th = complex_theta(&c(0.0, 0.0, 40)).unwrap();
        assert!(Float::with_val(200, &th.alpha - Float::with_val(200, &pi / 2u32)).abs() < 1e-40);
        let x0 = c(0.0, 3.0, 40);
        let th = complex_theta(&x0).unwrap();
        assert!(th.beta < 0);
        let z = th.to_complex();
        let cot = Complex::with_val(z.prec(), z.tan_ref()).recip();
        assert!(Float::with_val(200, Complex::with_val(z.prec(), cot - &x0).abs().real()) < 1e-30);
        assert!(matches!(
            complex_theta(&c(0.0, 1.0, 40)),
            Err(Error::AtRoot)
        ));
        assert!(matches!(
            complex_theta(&c(0.0, -1.0, 40)),
            Err(Error::AtRoot)
        ));
    }

    #[test]
    fn beta_sign_matches_half_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (re, im) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let th = complex_theta(&c(re, im, 30)).unwrap();
            assert!(th.alpha >= 0 && th.alpha < Float::with_val(100, Constant::Pi));
            assert_eq!(im > 0.0, th.beta < 0, "{re} + {im}i");
        }
    }

    fn abs(z: &Complex) -> Float {
        Float::with_val(z.prec().0, z.abs_ref())
    }

    #[test]
    fn deviation_examples() {
        let th = complex_theta(&c(0.3, 0.7, 40)).unwrap();
        let d = deviation_pair(1, 0, &th, 40).unwrap();
        let diff = Complex::with_val(200, &d.plus - &d.minus) - Complex::with_val(200, (0, 2));
        assert!(abs(&diff) < 1e-38);
        let d3 = deviation_pair(1, 3, &th, 40).unwrap();
        let d5 = deviation_pair(1, 5, &th, 40).unwrap();
        assert!(abs(&d5.minus) < abs(&d3.minus));
    }

    #[test]
    fn deviation_matches_direct_iteration() {
        for (re, im) in [(1.0, 1.0), (0.4, -0.3), (-2.0, 0.05), (0.0, 3.0)] {
            let x0 = c(re, im, 50);
            let th = complex_theta(&x0).unwrap();
            for k in 1..=3u32 {
                let orbit = iterate_complex(Method::Householder(k), &x0, 8, 50).unwrap();
                for (n, x) in orbit.iter().enumerate() {
                    let d = deviation_pair(k, n as u32, &th, 50).unwrap();
                    let direct =
                        Complex::with_val(x.prec(), x - Complex::with_val(x.prec(), (0, 1)));
                    let err = abs(&Complex::with_val(x.prec(), &d.minus - &direct));
                    assert!(err < 1e-40, "k={k}, n={n}, x0={re}+{im}i: {err}");
                }
            }
        }
    }

    #[test]
    fn predicted_basins() {
        assert_eq!(predict_basin(&c(2.0, 3.0, 20)), Basin::PlusI);
        assert_eq!(predict_basin(&c(5.0, -0.001, 20)), Basin::MinusI);
        assert_eq!(predict_basin(&c(7.0, 0.0, 20)), Basin::RealLine);
    }

    #[test]
    fn basin_prediction_matches_simulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut seeds = 0;
        while seeds < 100 {
            let (re, im): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if im.abs() <= 0.01 {
                continue;
            }
            seeds += 1;
            let x0 = c(re, im, 40);
            let target = match predict_basin(&x0) {
                Basin::PlusI => Complex::with_val(200, (0, 1)),
                Basin::MinusI => Complex::with_val(200, (0, -1)),
                Basin::RealLine => unreachable!(),
            };
            for k in 1..=3u32 {
                let orbit = iterate_complex(Method::Householder(k), &x0, 60, 40).unwrap();
                let last = orbit.last().unwrap();
                let err = abs(&Complex::with_val(last.prec(), last - &target));
                assert!(err < 1e-20, "k={k}, x0={re}+{im}i: {err}");
            }
        }
    }
}
