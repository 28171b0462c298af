//! Schröder's third-order iteration is Newton's method on a different function.
//! Recover that function, check it, and look at the spurious fixed points.
//!
//!     cargo run --example schroeder_disguise

use chaotic_roots::disguise::{
    fixed_points, format_complex, newton_disguise, residue_sum, singularity_exponent,
    verify_disguise, SingularityExponent,
};
use chaotic_roots::maps::{householder_map, schroeder_first_map};
use chaotic_roots::precision::sci;

fn main() -> chaotic_roots::Result<()> {
    let digits = 40;
    let g = schroeder_first_map(3)?;
    println!("G(x) = {g}");

    let h = newton_disguise(&g, digits)?;
    println!("h(x) = {h}");
    if let Some(real) = h.real_form(digits) {
        println!("     ∝ {real}");
    }
    println!(
        "residual |h/h' - (x - G)|: {}",
        sci(&verify_disguise(&h, &g, 100, digits)?, 3)
    );
    println!("sum of residues of 1/(x - G): {}", residue_sum(&g)?);

    println!("\nfixed points:");
    for p in fixed_points(&g, digits)? {
        println!(
            "  x = {:<28} G'(x) = {:<10} {:?}",
            format_complex(&p.location, 12),
            p.multiplier.real().to_f64(),
            p.classification
        );
    }

    println!("\ngrowth exponent at a pole of a conjugating function:");
    for (name, map, m) in [("Newton", householder_map(1), 2), ("Schroeder-3", g, 3)] {
        match singularity_exponent(&map, m)? {
            SingularityExponent::Algebraic { lambda, alpha } => {
                println!("  {name:<12} lambda = {lambda}, alpha = {}", alpha.to_f64())
            }
            SingularityExponent::NoAlgebraicSolution { lambda } => {
                println!("  {name:<12} lambda = {lambda}, none")
            }
        }
    }
    Ok(())
}
