//! Secant iteration: the angles follow a Fibonacci recurrence, so orbits are
//! governed by Fibonacci numbers modulo the common denominator.
//!
//!     cargo run --example secant

use chaotic_roots::exact::{
    classify_secant_orbit, fib, secant_angle, secant_blowup_step, RationalAngle,
};
use chaotic_roots::floatlab::{iterate_float, PrecisionConfig};
use chaotic_roots::oracle::cot_rational;
use chaotic_roots::precision::sci;
use chaotic_roots::Method;

fn main() -> chaotic_roots::Result<()> {
    println!(
        "F_0..F_15: {:?}",
        (0..16)
            .map(|n| fib(n).to_u64().unwrap())
            .collect::<Vec<_>>()
    );

    for (a, b) in [
        ((1, 4), (1, 2)),
        ((1, 8), (1, 2)),
        ((1, 5), (2, 5)),
        ((1, 7), (3, 7)),
    ] {
        let t0 = RationalAngle::new(a.0, a.1)?;
        let t1 = RationalAngle::new(b.0, b.1)?;
        let angles: Vec<String> = (0..8)
            .map(|n| secant_angle(n, &t0, &t1).to_string())
            .collect();
        println!(
            "({t0}, {t1}): {}  [{} ...]  formula blow-up: {:?}",
            classify_secant_orbit(&t0, &t1),
            angles.join(", "),
            secant_blowup_step(&t0, &t1, 1000)
        );
    }

    // The period-12 orbit survives a while in 40-digit arithmetic.
    let digits = 40;
    let prec = PrecisionConfig::new(digits)?;
    let t0 = RationalAngle::new(1, 8)?;
    let t1 = RationalAngle::new(1, 2)?;
    let x0 = prec.round(&cot_rational(&t0, digits)?);
    let x1 = prec.round(&cot_rational(&t1, digits)?);
    let orbit = iterate_float(Method::Secant, &x0, Some(&x1), 24, prec)?;
    println!("\nsecant from (pi/8, pi/2), 40 digits:");
    for (n, x) in orbit.values.iter().enumerate().step_by(6) {
        println!("  x_{n:<2} = {}", sci(x, 20));
    }
    Ok(())
}
