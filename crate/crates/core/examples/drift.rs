//! Finite-precision drift: how long a periodic orbit survives rounding, at
//! several precisions. Pass a path to also write the 32-digit CSV.
//!
//!     cargo run --example drift -- [newton_third.csv]

use std::fs::File;

use chaotic_roots::exact::RationalAngle;
use chaotic_roots::floatlab::{drift_report, iterate_float, write_csv, PrecisionConfig};
use chaotic_roots::oracle::cot_rational;
use chaotic_roots::precision::sci;
use chaotic_roots::Method;
use rug::Float;

fn main() -> chaotic_roots::Result<()> {
    let tol = Float::with_val(64, 0.5);
    let t0 = RationalAngle::new(1, 3)?;
    for digits in [16, 32, 64] {
        let report = drift_report(
            Method::NEWTON,
            &t0,
            None,
            300,
            PrecisionConfig::new(digits)?,
            &tol,
        )?;
        println!(
            "Newton from pi/3 at {digits} digits: period lost at step {:?}, error above 0.5 at step {:?}",
            report.first_period_failure, report.first_tol_breach
        );
        if digits == 32 {
            if let Some(path) = std::env::args().nth(1) {
                write_csv(&report, File::create(&path)?)?;
                println!("  wrote {path}");
            }
        }
    }

    // Near a pole, large values shrink by a factor of 3 per Halley step.
    let prec = PrecisionConfig::new(32)?;
    let x0 = prec.round(&cot_rational(&RationalAngle::new(1, 9)?, 32)?);
    let orbit = iterate_float(Method::HALLEY, &x0, None, 8, prec)?;
    println!("\nHalley from pi/9 at 32 digits:");
    for (n, x) in orbit.values.iter().enumerate() {
        println!("  x_{n} = {}", sci(x, 12));
    }
    Ok(())
}
