//! Finite-precision orbits and drift experiments.
//!
//! Everything here runs at a deliberately limited precision and is compared
//! against the exact oracle run with 20 extra digits, so any discrepancy is
//! attributable to the simulated precision alone.

use std::io::Write;

use rug::Float;

use crate::error::{Error, Result};
use crate::exact::{classify_orbit, classify_secant_orbit, OrbitClass, RationalAngle};
use crate::maps::{secant_step, Scalar};
use crate::method::Method;
use crate::oracle::{closed_form_iterate, cot_rational, ClosedForm};
use crate::precision::{digits_to_bits, sci, ten_to_minus};

/// Extra digits carried by the oracle in drift comparisons.
pub const ORACLE_EXTRA_DIGITS: u32 = 20;

/// Working precision of a simulated orbit, in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionConfig {
    decimal_digits: u32,
}

impl PrecisionConfig {
    pub fn new(decimal_digits: u32) -> Result<Self> {
        if decimal_digits < 5 {
            return Err(Error::InvalidPrecision(decimal_digits));
        }
        Ok(PrecisionConfig { decimal_digits })
    }

    pub fn digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn bits(&self) -> u32 {
        digits_to_bits(self.decimal_digits)
    }

    /// Rounds `x` to the working precision.
    pub fn round(&self, x: &Float) -> Float {
        Float::with_val(self.bits(), x)
    }
}

/// A step whose denominator was tiny relative to its numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoleEvent {
    /// Index of the iterate that was being produced.
    pub step: usize,
    /// The denominator was exactly zero and the orbit stopped.
    pub exact: bool,
}

/// A simulated orbit `x₀, x₁, …`.
#[derive(Clone, Debug)]
pub struct FloatOrbit {
    pub values: Vec<Float>,
    pub pole_events: Vec<PoleEvent>,
}

impl FloatOrbit {
    /// Whether the orbit stopped early at an exact pole.
    pub fn terminated(&self) -> bool {
        self.pole_events.last().is_some_and(|e| e.exact)
    }
}

fn near_pole(num: &Float, den: &Float, threshold: &Float) -> bool {
    let scaled = Float::with_val(num.prec(), num.abs_ref()) * threshold;
    Float::with_val(den.prec(), den.abs_ref()) < scaled
}

/// Iterates `method` at the configured precision for `steps` steps.
///
/// `values[n]` is `xₙ`; for the secant method `x1` is `values[1]`. Near-pole
/// steps are recorded and iteration continues; an exactly zero denominator
/// ends the orbit.
pub fn iterate_float(
    method: Method,
    x0: &Float,
    x1: Option<&Float>,
    steps: usize,
    prec: PrecisionConfig,
) -> Result<FloatOrbit> {
    let bits = prec.bits();
    let threshold = ten_to_minus((prec.digits() / 2) as i32, bits);
    let mut values = vec![prec.round(x0)];
    let mut pole_events = Vec::new();
    match (method, x1) {
        (Method::Secant, None) => return Err(Error::MissingSecondSeed(method.to_string())),
        (Method::Secant, Some(x1)) => {
            if steps == 0 {
                return Ok(FloatOrbit {
                    values,
                    pole_events,
                });
            }
            values.push(prec.round(x1));
            let one = Float::with_val(bits, 1);
            for n in 2..=steps {
                let (prev, curr) = (&values[n - 2], &values[n - 1]);
                let den = curr.add(prev);
                let num = curr.mul(prev).sub(&one);
                if den.is_zero() {
                    pole_events.push(PoleEvent {
                        step: n,
                        exact: true,
                    });
                    break;
                }
                if near_pole(&num, &den, &threshold) {
                    pole_events.push(PoleEvent {
                        step: n,
                        exact: false,
                    });
                }
                values.push(secant_step(prev, curr)?);
            }
        }
        (_, Some(_)) => return Err(Error::UnexpectedSecondSeed(method.to_string())),
        (_, None) => {
            let map = method.map().expect("one-step method").lower(&values[0]);
            for n in 1..=steps {
                let x = &values[n - 1];
                let num = map.numerator_at(x);
                let den = map.denominator_at(x);
                if den.is_zero() {
                    pole_events.push(PoleEvent {
                        step: n,
                        exact: true,
                    });
                    break;
                }
                if near_pole(&num, &den, &threshold) {
                    pole_events.push(PoleEvent {
                        step: n,
                        exact: false,
                    });
                }
                values.push(num.div(&den));
            }
        }
    }
    Ok(FloatOrbit {
        values,
        pole_events,
    })
}

/// One row of a drift report.
#[derive(Clone, Debug, PartialEq)]
pub struct DriftStep {
    pub n: usize,
    pub float_value: Float,
    pub oracle_value: Option<Float>,
    pub abs_error: Option<Float>,
}

/// A simulated orbit set against the exact closed form.
#[derive(Clone, Debug)]
pub struct DriftReport {
    pub digits: u32,
    pub seed: Float,
    /// Iterates `x₁, x₂, …`.
    pub steps: Vec<DriftStep>,
    pub pole_events: Vec<PoleEvent>,
    /// Exact orbit class of the seed angle, when known.
    pub exact_class: Option<OrbitClass>,
    pub first_tol_breach: Option<usize>,
    pub first_period_failure: Option<usize>,
}

impl DriftReport {
    /// A report with no oracle column, from a plain orbit.
    pub fn from_orbit(orbit: &FloatOrbit, digits: u32) -> Self {
        DriftReport {
            digits,
            seed: orbit.values[0].clone(),
            steps: orbit
                .values
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, x)| DriftStep {
                    n,
                    float_value: x.clone(),
                    oracle_value: None,
                    abs_error: None,
                })
                .collect(),
            pole_events: orbit.pole_events.clone(),
            exact_class: None,
            first_tol_breach: None,
            first_period_failure: None,
        }
    }

    /// `xₙ` for `n ≥ 0`.
    pub fn value(&self, n: usize) -> Option<&Float> {
        if n == 0 {
            Some(&self.seed)
        } else {
            self.steps.get(n - 1).map(|s| &s.float_value)
        }
    }
}

/// Runs `method` from `cot(πt0)` at the configured precision and compares each
/// iterate against the closed form evaluated with 20 extra digits.
///
/// The period check starts once the exact orbit is on its cycle: it reports
/// the first `n ≥ preperiod + period` with `|xₙ − xₙ₋ₚ| > tol`.
pub fn drift_report(
    method: Method,
    t0: &RationalAngle,
    t1: Option<&RationalAngle>,
    steps: usize,
    prec: PrecisionConfig,
    tol: &Float,
) -> Result<DriftReport> {
    let class = match (method, t1) {
        (Method::Schroeder3, _) => return Err(Error::NoOracle(method.to_string())),
        (Method::Secant, Some(t1)) => classify_secant_orbit(t0, t1),
        (Method::Secant, None) => return Err(Error::MissingSecondSeed(method.to_string())),
        (Method::Householder(k), None) => classify_orbit(t0, k + 1),
        (Method::Householder(_), Some(_)) => {
            return Err(Error::UnexpectedSecondSeed(method.to_string()))
        }
    };
    if let Some(step) = class.blowup_step() {
        if step <= steps {
            return Err(Error::OrbitBlowsUp { step });
        }
    }
    let digits = prec.digits();
    let oracle_digits = digits + ORACLE_EXTRA_DIGITS;
    let x0 = prec.round(&cot_rational(t0, digits)?);
    let x1 = t1.map(|t| cot_rational(t, digits)).transpose()?;
    let orbit = iterate_float(method, &x0, x1.as_ref(), steps, prec)?;

    let mut report = DriftReport::from_orbit(&orbit, digits);
    report.exact_class = Some(class);
    for row in &mut report.steps {
        if let ClosedForm::Value(v) =
            closed_form_iterate(method, row.n as u64, t0, t1, oracle_digits)?
        {
            let err = Float::with_val(v.prec(), &row.float_value - &v).abs();
            if report.first_tol_breach.is_none() && err > *tol {
                report.first_tol_breach = Some(row.n);
            }
            row.oracle_value = Some(v);
            row.abs_error = Some(err);
        }
    }
    if let (Some(pre), Some(p)) = (class.preperiod(), class.period()) {
        report.first_period_failure = (pre + p..orbit.values.len()).find(|&n| {
            let gap = Float::with_val(
                orbit.values[n].prec(),
                &orbit.values[n] - &orbit.values[n - p],
            );
            gap.abs() > *tol
        });
    }
    Ok(report)
}

/// The angle orbit `tₙ₊₁ = m·tₙ mod 1` kept at working precision, for
/// Householder methods.
///
/// Angles are reduced into `[−1/2, 1/2)` rather than `[0, 1)`, so values next
/// to the pole angle `0` keep their full relative precision on both sides.
/// Stops after the first angle that is exactly `0`.
pub fn angle_track(
    method: Method,
    t0: &Float,
    steps: usize,
    prec: PrecisionConfig,
) -> Result<Vec<Float>> {
    let m = method
        .multiplier()
        .ok_or_else(|| Error::NotApplicable(format!("{method} has no angle multiplier")))?;
    let bits = prec.bits();
    // m·t and its nearest integer are exact with a few extra bits; only the
    // reduced angle is rounded back to working precision.
    let wide = bits + (u32::BITS - m.leading_zeros());
    let reduce = |x: Float| {
        let shifted = Float::with_val(wide, &x + 0.5);
        let whole = Float::with_val(wide, shifted.floor_ref());
        Float::with_val(bits, x - whole)
    };
    let mut out = vec![reduce(Float::with_val(wide, &prec.round(t0)))];
    for _ in 0..steps {
        let last = out.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = reduce(Float::with_val(wide, last * m));
        out.push(next);
    }
    Ok(out)
}

/// First index where a float angle track sits farther than `tol` (on the
/// circle) from the exact orbit of `exact_t0`.
pub fn first_angle_drift(
    track: &[Float],
    exact_t0: &RationalAngle,
    m: u32,
    tol: f64,
) -> Option<usize> {
    let mut exact = exact_t0.clone();
    for (n, t) in track.iter().enumerate() {
        let d = (t.to_f64() - exact.to_f64()).rem_euclid(1.0);
        if d.min(1.0 - d) > tol {
            return Some(n);
        }
        exact = exact.shift(m);
    }
    None
}

/// Writes `n,float_value,oracle_value,abs_error` in scientific notation with
/// every working digit; missing oracle fields are left empty.
pub fn write_csv<W: Write>(report: &DriftReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "float_value", "oracle_value", "abs_error"])?;
    let oracle_digits = report.digits + ORACLE_EXTRA_DIGITS;
    for row in &report.steps {
        w.write_record([
            row.n.to_string(),
            sci(&row.float_value, report.digits),
            row.oracle_value
                .as_ref()
                .map(|v| sci(v, oracle_digits))
                .unwrap_or_default(),
            row.abs_error
                .as_ref()
                .map(|v| sci(v, report.digits))
                .unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
