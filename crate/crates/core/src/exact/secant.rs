use std::collections::HashMap;

use rug::{Integer, Rational};

use super::angle::RationalAngle;
use super::orbit::OrbitClass;

/// Fibonacci numbers with `F₀ = 0, F₁ = 1`.
pub fn fib(n: u32) -> Integer {
    Integer::from(Integer::fibonacci(n))
}

/// Fibonacci numbers extended to negative indices, `F₋ₙ = (−1)ⁿ⁺¹ Fₙ`.
pub fn fib_signed(n: i64) -> Integer {
    let f = fib(n.unsigned_abs() as u32);
    if n < 0 && n % 2 == 0 {
        -f
    } else {
        f
    }
}

/// Consecutive angles of the secant iteration on `x² + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SecantAngleState {
    pub prev: RationalAngle,
    pub curr: RationalAngle,
}

impl SecantAngleState {
    pub fn new(prev: RationalAngle, curr: RationalAngle) -> Self {
        SecantAngleState { prev, curr }
    }

    /// `(θₙ₋₁, θₙ) → (θₙ, θₙ + θₙ₋₁)`.
    pub fn step(&self) -> Self {
        SecantAngleState {
            prev: self.curr.clone(),
            curr: self.curr.add(&self.prev),
        }
    }
}

/// `θₙ/π = (Fₙ₋₁·t0 + Fₙ·t1) mod 1`, with `F₋₁ = 1` so that `n = 0` gives `t0`.
pub fn secant_angle(n: u64, t0: &RationalAngle, t1: &RationalAngle) -> RationalAngle {
    let n = n as i64;
    combine(&fib_signed(n - 1), t0, &fib_signed(n), t1)
}

fn combine(a: &Integer, t0: &RationalAngle, b: &Integer, t1: &RationalAngle) -> RationalAngle {
    let q = Rational::from(a * t0.as_rational()) + Rational::from(b * t1.as_rational());
    RationalAngle::from_rational(q)
}

/// Least `N ≤ max_n` with `Fₙ₋₁·t0 + Fₙ·t1 ≡ 0 (mod 1)`, from the Fibonacci
/// formula alone (no angle recurrence is stepped).
pub fn secant_blowup_step(t0: &RationalAngle, t1: &RationalAngle, max_n: u64) -> Option<u64> {
    // (F_{N-1}, F_N) starting from (F_{-1}, F_0) = (1, 0).
    let mut f_prev = Integer::from(1);
    let mut f_curr = Integer::new();
    for n in 0..=max_n {
        if combine(&f_prev, t0, &f_curr, t1).is_zero() {
            return Some(n);
        }
        let next = Integer::from(&f_prev + &f_curr);
        f_prev = std::mem::replace(&mut f_curr, next);
    }
    None
}

/// Classifies the secant orbit by cycle detection on the angle pair.
///
/// `BlowsUp` reports the least `n` with `θₙ ≡ 0`; otherwise the preperiod and
/// prime period of the pair sequence (which equal those of `θₙ`).
pub fn classify_secant_orbit(t0: &RationalAngle, t1: &RationalAngle) -> OrbitClass {
    if t0.is_zero() {
        return OrbitClass::BlowsUp { step: 0 };
    }
    let mut seen: HashMap<SecantAngleState, usize> = HashMap::new();
    let mut state = SecantAngleState::new(t0.clone(), t1.clone());
    // `state.curr` is θ_{n+1}.
    let mut n = 0usize;
    loop {
        if state.curr.is_zero() {
            return OrbitClass::BlowsUp { step: n + 1 };
        }
        if let Some(&first) = seen.get(&state) {
            return OrbitClass::EventuallyPeriodic {
                preperiod: first,
                period: n - first,
            };
        }
        let next = state.step();
        seen.insert(state, n);
        state = next;
        n += 1;
    }
}
