//! Basins of ±i for Newton and Schröder-3 as PPM images.
//!
//!     cargo run --release --example basins -- [size] [outdir]

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use chaotic_roots::fractal::{render, write_ppm, GridSpec, DEFAULT_PALETTE};
use chaotic_roots::maps::{householder_map, schroeder_first_map};
use num_complex::Complex64;

fn main() -> chaotic_roots::Result<()> {
    let mut args = std::env::args().skip(1);
    let size: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(400);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let roots = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
    let grid = GridSpec::square(size)?;

    for (name, map) in [
        ("newton", householder_map(1)),
        ("schroeder3", schroeder_first_map(3)?),
    ] {
        let img = render(&map, &grid, &roots, 60, 1e-8)?;
        let path = dir.join(format!("{name}.ppm"));
        write_ppm(
            &img,
            &DEFAULT_PALETTE,
            true,
            BufWriter::new(File::create(&path)?),
        )?;
        let upper_to_minus_i = (0..grid.rows)
            .flat_map(|r| (0..grid.cols).map(move |c| (c, r)))
            .filter(|&(c, r)| grid.seed(c, r).im > 0.0 && img.get(c, r).root == Some(1))
            .count();
        println!(
            "{}: {} boundary pixels, {upper_to_minus_i} upper-half seeds reach -i",
            path.display(),
            img.boundary_count()
        );
    }
    Ok(())
}
