//! Exact angle orbits of Newton and Halley on x² + 1, side by side with the
//! radix expansion whose shift they are.
//!
//!     cargo run --example orbit_table

use chaotic_roots::exact::{digits, trace_orbit, RationalAngle};

fn main() -> chaotic_roots::Result<()> {
    let seeds = [
        (2, 1, 3),
        (2, 1, 4),
        (2, 1, 5),
        (3, 1, 8),
        (3, 1, 7),
        (3, 1, 12),
        (3, 1, 9),
        (3, 1, 6),
    ];
    println!("{:<8} {:<4} {:<52} expansion", "t0", "m", "orbit");
    for (m, p, q) in seeds {
        let t0 = RationalAngle::new(p, q)?;
        let orbit = trace_orbit(&t0, m);
        let mut verdict = orbit.class.to_string();
        if orbit.visits_zero_value() {
            verdict.push_str(" (x = 0)");
        }
        println!(
            "{:<8} {:<4} {:<52} {}",
            t0.to_string(),
            m,
            verdict,
            digits(&t0, m, 1000)?
        );
    }

    // The visited angles themselves, for a longer cycle.
    let t0 = RationalAngle::new(1, 7)?;
    let path: Vec<String> = trace_orbit(&t0, 3)
        .angles
        .iter()
        .map(|a| a.to_string())
        .collect();
    println!("\nHalley from pi/7: {}", path.join(" -> "));
    Ok(())
}
