use std::collections::HashMap;
use std::fmt;

use rug::Integer;

use super::angle::RationalAngle;

/// Verdict for an exact rational-angle orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitClass {
    /// The angle reaches `0` (mod π) at `step`; the iterate there is infinite.
    BlowsUp { step: usize },
    /// The orbit enters a cycle of prime period `period` after `preperiod` steps.
    EventuallyPeriodic { preperiod: usize, period: usize },
}

impl OrbitClass {
    pub fn blows_up(&self) -> bool {
        matches!(self, OrbitClass::BlowsUp { .. })
    }

    pub fn blowup_step(&self) -> Option<usize> {
        match *self {
            OrbitClass::BlowsUp { step } => Some(step),
            OrbitClass::EventuallyPeriodic { .. } => None,
        }
    }

    pub fn preperiod(&self) -> Option<usize> {
        match *self {
            OrbitClass::EventuallyPeriodic { preperiod, .. } => Some(preperiod),
            OrbitClass::BlowsUp { .. } => None,
        }
    }

    pub fn period(&self) -> Option<usize> {
        match *self {
            OrbitClass::EventuallyPeriodic { period, .. } => Some(period),
            OrbitClass::BlowsUp { .. } => None,
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClass::BlowsUp { step } => write!(f, "blows up at step {step}"),
            OrbitClass::EventuallyPeriodic { preperiod, period } => write!(
                f,
                "eventually periodic, preperiod {preperiod}, period {period}"
            ),
        }
    }
}

/// The full exact angle orbit up to and including the first repeated state
/// (or the blow-up angle), together with its classification.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub angles: Vec<RationalAngle>,
    pub class: OrbitClass,
}

impl Orbit {
    /// Whether some iterate equals `x = 0` (angle π/2).
    ///
    /// For odd multipliers angle 1/2 is fixed, so a hit is the spurious
    /// convergence to zero; for even multipliers the next angle is 0.
    pub fn visits_zero_value(&self) -> bool {
        self.angles.iter().any(RationalAngle::is_half)
    }
}

/// Runs `t → m·t mod 1` from `t0` until it hits 0 or repeats a state.
///
/// The state space is the set of fractions with denominator dividing
/// `den(t0)`, so this stops after at most `den(t0) + 1` distinct states.
pub fn trace_orbit(t0: &RationalAngle, m: u32) -> Orbit {
    let mut seen: HashMap<RationalAngle, usize> = HashMap::new();
    let mut angles = Vec::new();
    let mut t = t0.clone();
    loop {
        let n = angles.len();
        if t.is_zero() {
            angles.push(t);
            return Orbit {
                angles,
                class: OrbitClass::BlowsUp { step: n },
            };
        }
        if let Some(&first) = seen.get(&t) {
            return Orbit {
                angles,
                class: OrbitClass::EventuallyPeriodic {
                    preperiod: first,
                    period: n - first,
                },
            };
        }
        seen.insert(t.clone(), n);
        let next = t.shift(m);
        angles.push(t);
        t = next;
    }
}

/// Classifies the shift orbit by direct simulation.
pub fn classify_orbit(t0: &RationalAngle, m: u32) -> OrbitClass {
    trace_orbit(t0, m).class
}

/// Classifies the shift orbit from the factorisation of `den(t0)` alone.
///
/// Split `den = d1·d2` where `d1` collects the primes shared with `m`. The
/// orbit blows up iff `d2 = 1`; otherwise the preperiod is the least `n` with
/// `d1 | mⁿ` and the period is the multiplicative order of `m` modulo `d2`.
pub fn predict_orbit(t0: &RationalAngle, m: u32) -> OrbitClass {
    let m_int = Integer::from(m);
    let (d1, d2) = split_denominator(t0.den(), &m_int);

    // Least n with d1 | mⁿ: each step strips gcd(d1, m) from d1.
    let mut rest = d1;
    let mut strip_steps = 0usize;
    while rest != 1 {
        let g = Integer::from(rest.gcd_ref(&m_int));
        rest /= g;
        strip_steps += 1;
    }

    if d2 == 1 {
        OrbitClass::BlowsUp { step: strip_steps }
    } else {
        OrbitClass::EventuallyPeriodic {
            preperiod: strip_steps,
            period: multiplicative_order(&m_int, &d2),
        }
    }
}

/// Splits `den` into `(d1, d2)` with `d1` built only from primes dividing `m`
/// and `gcd(d2, m) = 1`.
fn split_denominator(den: &Integer, m: &Integer) -> (Integer, Integer) {
    let mut d2 = den.clone();
    let mut d1 = Integer::from(1);
    loop {
        let g = Integer::from(d2.gcd_ref(m));
        if g == 1 {
            break;
        }
        d2 /= &g;
        d1 *= &g;
    }
    (d1, d2)
}

/// Least `p ≥ 1` with `m^p ≡ 1 (mod modulus)`; requires `gcd(m, modulus) = 1`.
fn multiplicative_order(m: &Integer, modulus: &Integer) -> usize {
    if *modulus == 1 {
        return 1;
    }
    let base = Integer::from(m.modulo_ref(modulus));
    let mut acc = base.clone();
    let mut order = 1usize;
    while acc != 1 {
        acc *= &base;
        acc.modulo_mut(modulus);
        order += 1;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angle(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d).unwrap()
    }

    fn periodic(preperiod: usize, period: usize) -> OrbitClass {
        OrbitClass::EventuallyPeriodic { preperiod, period }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_orbit(&angle(1, 3), 2), periodic(0, 2));
        assert_eq!(classify_orbit(&angle(1, 12), 3), periodic(1, 2));
        assert_eq!(
            classify_orbit(&angle(1, 9), 3),
            OrbitClass::BlowsUp { step: 2 }
        );
        assert_eq!(classify_orbit(&angle(1, 7), 3), periodic(0, 6));
        assert_eq!(
            classify_orbit(&angle(1, 4), 2),
            OrbitClass::BlowsUp { step: 2 }
        );
    }

    #[test]
    fn predict_examples() {
        assert_eq!(predict_orbit(&angle(1, 8), 3), periodic(0, 2));
        assert_eq!(
            predict_orbit(&angle(1, 4), 2),
            OrbitClass::BlowsUp { step: 2 }
        );
        assert_eq!(predict_orbit(&angle(1, 6), 3), periodic(1, 1));
    }

    #[test]
    fn zero_angle_is_already_blown_up() {
        let zero = RationalAngle::zero();
        assert_eq!(classify_orbit(&zero, 2), OrbitClass::BlowsUp { step: 0 });
        assert_eq!(predict_orbit(&zero, 5), OrbitClass::BlowsUp { step: 0 });
    }

    #[test]
    fn spurious_zero_visits() {
        // Halley from π/6: x1 = 0 and stays there.
        let orbit = trace_orbit(&angle(1, 6), 3);
        assert!(orbit.visits_zero_value());
        assert_eq!(orbit.class, periodic(1, 1));
        // Newton from π/4 passes through x = 0 and then blows up.
        let orbit = trace_orbit(&angle(1, 4), 2);
        assert!(orbit.visits_zero_value());
        assert!(orbit.class.blows_up());
        assert!(!trace_orbit(&angle(1, 7), 3).visits_zero_value());
    }

    #[test]
    fn predict_agrees_with_simulation() {
        for m in 2..=10u32 {
            for den in 1..=200i64 {
                for num in 0..den {
                    if Integer::from(num).gcd(&Integer::from(den)) != 1 {
                        continue;
                    }
                    let t = angle(num, den);
                    assert_eq!(predict_orbit(&t, m), classify_orbit(&t, m), "t={t} m={m}");
                }
            }
        }
    }

    #[test]
    fn period_from_start_for_mersenne_like_denominators() {
        for m in 2..=5u32 {
            for n in 1..=6u32 {
                let den = Integer::from(Integer::u_pow_u(m, n)) - 1u32;
                let den_i = den.to_i64().unwrap();
                for num in (1..den_i).step_by(((den_i / 15).max(1)) as usize) {
                    let class = classify_orbit(&angle(num, den_i), m);
                    let p = class.period().expect("periodic");
                    assert_eq!(class.preperiod(), Some(0));
                    assert_eq!(n as usize % p, 0, "period {p} must divide {n}");
                }
            }
        }
    }
}
