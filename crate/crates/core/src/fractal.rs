//! Basin-of-attraction images over a grid of complex seeds, in double
//! precision, written as binary PPM.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::maps::{LoweredMap, RationalMap, Scalar};

/// Default cap on `cols·rows`.
pub const DEFAULT_PIXEL_BUDGET: usize = 4096 * 4096;

/// Iterates past this magnitude are treated as escaped.
pub const ESCAPE_RADIUS: f64 = 1e12;

/// Root colours for `+i`, `−i`, then the non-convergent colour.
pub const DEFAULT_PALETTE: [[u8; 3]; 3] = [[230, 80, 50], [40, 110, 220], [15, 15, 15]];

/// A rectangle of the complex plane sampled at pixel centres. Row 0 is the top.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
    pub cols: usize,
    pub rows: usize,
}

impl GridSpec {
    pub fn new(
        center: Complex64,
        width: f64,
        height: f64,
        cols: usize,
        rows: usize,
    ) -> Result<Self> {
        Self::with_budget(center, width, height, cols, rows, DEFAULT_PIXEL_BUDGET)
    }

    pub fn with_budget(
        center: Complex64,
        width: f64,
        height: f64,
        cols: usize,
        rows: usize,
        budget: usize,
    ) -> Result<Self> {
        if !(width.is_finite() && width > 0.0 && height.is_finite() && height > 0.0) {
            return Err(Error::InvalidGrid(format!("extent {width} x {height}")));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidGrid(format!("center {center}")));
        }
        if cols == 0 || rows == 0 {
            return Err(Error::InvalidGrid(format!("{cols} x {rows} pixels")));
        }
        if cols.checked_mul(rows).is_none_or(|n| n > budget) {
            return Err(Error::InvalidGrid(format!(
                "{cols} x {rows} pixels exceeds the budget of {budget}"
            )));
        }
        Ok(GridSpec {
            center,
            width,
            height,
            cols,
            rows,
        })
    }

    /// The square `[−2, 2]²` at the given resolution.
    pub fn square(size: usize) -> Result<Self> {
        GridSpec::new(Complex64::new(0.0, 0.0), 4.0, 4.0, size, size)
    }

    /// Centre of pixel `(col, row)`. Conjugate rows map to exactly conjugate
    /// seeds when the grid is centred on the real axis.
    pub fn seed(&self, col: usize, row: usize) -> Complex64 {
        let (cols, rows) = (self.cols as f64, self.rows as f64);
        let dx = (2.0 * col as f64 + 1.0 - cols) * self.width / (2.0 * cols);
        let dy = (rows - 2.0 * row as f64 - 1.0) * self.height / (2.0 * rows);
        Complex64::new(self.center.re + dx, self.center.im + dy)
    }

    pub fn pixel_height(&self) -> f64 {
        self.height / self.rows as f64
    }
}

/// Outcome for one seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    /// Index of the root reached, or `None` if the orbit never settled.
    pub root: Option<usize>,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasinImage {
    pub grid: GridSpec,
    pub root_count: usize,
    pub max_iter: usize,
    /// Row-major.
    pub verdicts: Vec<Verdict>,
}

impl BasinImage {
    pub fn get(&self, col: usize, row: usize) -> Verdict {
        self.verdicts[row * self.grid.cols + col]
    }

    /// Pixels with a 4-neighbour that reached a different root (or none).
    pub fn boundary_count(&self) -> usize {
        let (cols, rows) = (self.grid.cols, self.grid.rows);
        let mut count = 0;
        for r in 0..rows {
            for c in 0..cols {
                let here = self.get(c, r).root;
                let neighbours = [
                    (c > 0).then(|| (c - 1, r)),
                    (c + 1 < cols).then(|| (c + 1, r)),
                    (r > 0).then(|| (c, r - 1)),
                    (r + 1 < rows).then(|| (c, r + 1)),
                ];
                if neighbours
                    .into_iter()
                    .flatten()
                    .any(|(nc, nr)| self.get(nc, nr).root != here)
                {
                    count += 1;
                }
            }
        }
        count
    }
}

fn classify(
    map: &LoweredMap<Complex64>,
    seed: Complex64,
    roots: &[Complex64],
    max_iter: usize,
    tol: f64,
) -> Verdict {
    let mut z = seed;
    for i in 0..=max_iter {
        if let Some(j) = roots.iter().position(|r| (z - r).norm() < tol) {
            return Verdict {
                root: Some(j),
                iterations: i,
            };
        }
        if i == max_iter {
            break;
        }
        let den = map.denominator_at(&z);
        if den.is_zero() {
            return Verdict {
                root: None,
                iterations: i + 1,
            };
        }
        z = map.numerator_at(&z) / den;
        if !z.is_finite() || z.norm() > ESCAPE_RADIUS {
            return Verdict {
                root: None,
                iterations: i + 1,
            };
        }
    }
    Verdict {
        root: None,
        iterations: max_iter,
    }
}

/// Iterates `map` from every pixel centre. Rows are rendered in parallel;
/// each verdict depends only on its seed.
pub fn render(
    map: &RationalMap,
    grid: &GridSpec,
    roots: &[Complex64],
    max_iter: usize,
    tol: f64,
) -> Result<BasinImage> {
    if roots.is_empty() {
        return Err(Error::InvalidGrid("no roots to converge to".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidGrid(format!("tolerance {tol}")));
    }
    let lowered = map.lower(&Complex64::new(0.0, 0.0));
    let rows: Vec<Vec<Verdict>> = (0..grid.rows)
        .into_par_iter()
        .map(|r| {
            (0..grid.cols)
                .map(|c| classify(&lowered, grid.seed(c, r), roots, max_iter, tol))
                .collect()
        })
        .collect();
    Ok(BasinImage {
        grid: *grid,
        root_count: roots.len(),
        max_iter,
        verdicts: rows.concat(),
    })
}

/// Binary PPM (P6, maxval 255). `palette[j]` colours root `j`; the last entry
/// colours non-convergent pixels. With `shade`, converged pixels darken
/// linearly with iteration count, reaching black at `max_iter`.
pub fn write_ppm<W: Write>(
    img: &BasinImage,
    palette: &[[u8; 3]],
    shade: bool,
    mut out: W,
) -> Result<()> {
    let needed = img.root_count + 1;
    if palette.len() < needed {
        return Err(Error::InvalidPalette {
            needed,
            got: palette.len(),
        });
    }
    let fallback = palette[palette.len() - 1];
    write!(out, "P6\n{} {}\n255\n", img.grid.cols, img.grid.rows)?;
    let mut bytes = Vec::with_capacity(img.verdicts.len() * 3);
    for v in &img.verdicts {
        let rgb = match v.root {
            Some(j) if shade && img.max_iter > 0 => {
                let left = img.max_iter.saturating_sub(v.iterations) as f64 / img.max_iter as f64;
                palette[j].map(|ch| (ch as f64 * left).round() as u8)
            }
            Some(j) => palette[j],
            None => fallback,
        };
        bytes.extend_from_slice(&rgb);
    }
    out.write_all(&bytes)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{householder_map, newton_map, schroeder_first_map};
    use crate::oracle::{predict_basin, Basin};

    const ROOTS: [Complex64; 2] = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];

    fn square_render(map: &RationalMap) -> BasinImage {
        render(map, &GridSpec::square(64).unwrap(), &ROOTS, 60, 1e-8).unwrap()
    }

    fn predicted_index(z: Complex64) -> Option<usize> {
        match predict_basin(&rug::Complex::with_val(53, (z.re, z.im))) {
            Basin::PlusI => Some(0),
            Basin::MinusI => Some(1),
            Basin::RealLine => None,
        }
    }

    #[test]
    fn grid_validation_and_seeds() {
        assert!(GridSpec::square(0).is_err());
        assert!(GridSpec::new(Complex64::new(0.0, 0.0), -1.0, 1.0, 4, 4).is_err());
        assert!(GridSpec::with_budget(Complex64::new(0.0, 0.0), 1.0, 1.0, 10, 10, 99).is_err());
        let g = GridSpec::square(4).unwrap();
        assert_eq!(g.seed(0, 0), Complex64::new(-1.5, 1.5));
        assert_eq!(g.seed(3, 3), Complex64::new(1.5, -1.5));
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(g.seed(c, r).conj(), g.seed(c, 3 - r));
            }
        }
    }

    #[test]
    fn half_plane_rule() {
        for k in 1..=3 {
            let img = square_render(&householder_map(k));
            let half = img.grid.pixel_height() / 2.0;
            for r in 0..64 {
                for c in 0..64 {
                    let z = img.grid.seed(c, r);
                    if z.im.abs() <= half {
                        continue;
                    }
                    assert_eq!(img.get(c, r).root, predicted_index(z), "k={k} at {z}");
                }
            }
        }
    }

    #[test]
    fn real_seed_never_converges() {
        let grid = GridSpec::new(Complex64::new(0.3, 0.0), 4.0, 1.0, 9, 1).unwrap();
        let img = render(&newton_map(), &grid, &ROOTS, 200, 1e-8).unwrap();
        assert!(img.verdicts.iter().all(|v| v.root.is_none()));
    }

    #[test]
    fn schroeder_basins_cross_the_axis_rule() {
        let img = square_render(&schroeder_first_map(3).unwrap());
        let crossing = (0..64)
            .flat_map(|r| (0..64).map(move |c| (c, r)))
            .any(|(c, r)| img.grid.seed(c, r).im > 0.0 && img.get(c, r).root == Some(1));
        assert!(crossing);
        // Conjugate pixels swap roots.
        for r in 0..64 {
            for c in 0..64 {
                let swapped = img.get(c, 63 - r).root.map(|j| 1 - j);
                assert_eq!(img.get(c, r).root, swapped);
            }
        }
        let newton = square_render(&newton_map());
        assert!(img.boundary_count() > newton.boundary_count());
    }

    #[test]
    fn rendering_is_deterministic() {
        let map = schroeder_first_map(3).unwrap();
        let bytes = || {
            let mut buf = Vec::new();
            write_ppm(&square_render(&map), &DEFAULT_PALETTE, true, &mut buf).unwrap();
            buf
        };
        assert_eq!(bytes(), bytes());
    }

    fn image(cols: usize, rows: usize, verdicts: Vec<Verdict>) -> BasinImage {
        BasinImage {
            grid: GridSpec::new(Complex64::new(0.0, 0.0), 1.0, 1.0, cols, rows).unwrap(),
            root_count: 2,
            max_iter: 10,
            verdicts,
        }
    }

    #[test]
    fn ppm_bytes() {
        let palette = [[255, 0, 0], [0, 0, 255], [0, 0, 0]];
        let img = image(
            2,
            1,
            vec![
                Verdict {
                    root: Some(0),
                    iterations: 3,
                },
                Verdict {
                    root: Some(1),
                    iterations: 3,
                },
            ],
        );
        let mut buf = Vec::new();
        write_ppm(&img, &palette, false, &mut buf).unwrap();
        assert_eq!(buf, b"P6\n2 1\n255\n\xff\x00\x00\x00\x00\xff");

        let img = image(
            4,
            4,
            vec![
                Verdict {
                    root: None,
                    iterations: 10
                };
                16
            ],
        );
        let mut buf = Vec::new();
        write_ppm(&img, &[[1, 2, 3], [4, 5, 6], [7, 8, 9]], false, &mut buf).unwrap();
        let payload = &buf[b"P6\n4 4\n255\n".len()..];
        assert_eq!(payload.len(), 48);
        assert!(payload.chunks(3).all(|px| px == [7, 8, 9]));

        assert!(matches!(
            write_ppm(&img, &palette[..2], false, Vec::new()),
            Err(Error::InvalidPalette { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn ppm_header_round_trip() {
        let grid = GridSpec::new(Complex64::new(0.0, 0.0), 4.0, 3.0, 40, 30).unwrap();
        let img = render(&newton_map(), &grid, &ROOTS, 30, 1e-8).unwrap();
        let mut buf = Vec::new();
        write_ppm(&img, &DEFAULT_PALETTE, true, &mut buf).unwrap();
        let text = String::from_utf8_lossy(&buf[..12]).to_string();
        let mut fields = text.split_whitespace();
        assert_eq!(fields.next(), Some("P6"));
        let cols: usize = fields.next().unwrap().parse().unwrap();
        let rows: usize = fields.next().unwrap().parse().unwrap();
        assert_eq!((cols, rows), (40, 30));
        assert_eq!(buf.len(), "P6\n40 30\n255\n".len() + 40 * 30 * 3);
    }
}
