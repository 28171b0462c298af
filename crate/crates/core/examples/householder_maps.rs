//! The Householder family on x² + 1 as exact rational maps, and the identities
//! tying it to Schröder's first-kind iterations.
//!
//!     cargo run --example householder_maps

use chaotic_roots::maps::{householder_map, inv_f_derivative, schroeder_first_map, series_revert};
use rug::Rational;

fn main() -> chaotic_roots::Result<()> {
    for k in 1..=5 {
        let g = householder_map(k);
        println!("order {k}: {g}");
        println!(
            "         x - G(x) = ({})/({})",
            g.fixed_point_polynomial(),
            g.den()
        );
    }
    println!("\n(1/f)'' = {}", inv_f_derivative(2).map);

    let newton = householder_map(1);
    println!(
        "\nSchroeder order 2 is Newton: {}",
        schroeder_first_map(2)? == newton
    );
    println!(
        "two Newton steps are order 3: {}",
        newton.compose(&newton) == householder_map(3)
    );
    println!("Schroeder order 3: {}", schroeder_first_map(3)?);

    let (a1, a2, a3) = (Rational::from(2), Rational::from(3), Rational::from((1, 2)));
    let rev = series_revert(&a1, &a2, &a3)?;
    println!(
        "\nreverting 2dx + 3dx^2 + dx^3/2: A1 = {}, A2 = {}, A3 = {}",
        rev.linear, rev.quadratic, rev.cubic
    );
    Ok(())
}
