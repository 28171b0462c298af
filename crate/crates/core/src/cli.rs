//! Command-line front end.
//!
//! Exit status: 0 on success, 2 when flags do not parse or validate, 1 when
//! the computation itself fails.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rug::Float;

use crate::disguise::{format_complex, newton_disguise, verify_disguise};
use crate::error::{Error, Result};
use crate::exact::{self, classify_secant_orbit, trace_orbit, RationalAngle};
use crate::floatlab::{drift_report, iterate_float, write_csv, DriftReport, PrecisionConfig};
use crate::fractal::{render, write_ppm, GridSpec, DEFAULT_PALETTE};
use crate::method::Method;
use crate::oracle::{cot_hp, cot_rational, verify_theorem};
use crate::precision::{digits_to_bits, sci};

/// An angle as a fraction of π.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleArg {
    Rational(RationalAngle),
    Real(Float),
}

impl AngleArg {
    pub fn rational(&self) -> Option<&RationalAngle> {
        match self {
            AngleArg::Rational(t) => Some(t),
            AngleArg::Real(_) => None,
        }
    }

    /// `cot(π·t)`.
    pub fn cot(&self, digits: u32) -> Result<Float> {
        match self {
            AngleArg::Rational(t) => cot_rational(t, digits),
            AngleArg::Real(t) => cot_hp(t, digits),
        }
    }
}

/// `"p/q"` is exact; a decimal becomes a big-float at `digits` precision;
/// `"sqrt2/2"` is `1/√2`.
pub fn parse_angle(text: &str, digits: u32) -> Result<AngleArg> {
    let bits = digits_to_bits(digits);
    let t = text.trim();
    let bad = || Error::AngleParse(text.to_string());
    if t.eq_ignore_ascii_case("sqrt2/2") {
        return Ok(AngleArg::Real(Float::with_val(bits, 2).sqrt() / 2u32));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: rug::Integer = p.trim().parse().map_err(|_| bad())?;
        let q: rug::Integer = q.trim().parse().map_err(|_| bad())?;
        return RationalAngle::new(p, q)
            .map(AngleArg::Rational)
            .map_err(|_| bad());
    }
    let parsed = Float::parse(t).map_err(|_| bad())?;
    let value = Float::with_val(bits, parsed);
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(AngleArg::Real(value))
}

#[derive(Parser, Debug)]
#[command(
    name = "chaotic-roots",
    version,
    about = "Exact chaos of root-finding iterations on x^2 + 1"
)]
struct Cli {
    /// Decimal digits for all big-float work.
    #[arg(long, global = true, default_value_t = 32)]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Seeds {
    /// Method: newton, halley, householder:K, secant, schroeder3.
    #[arg(long)]
    method: Method,
    /// Seed angle as a fraction of π: p/q, a decimal, or sqrt2/2.
    #[arg(long)]
    theta: String,
    /// Second seed angle (secant only).
    #[arg(long)]
    theta1: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate a method in big-float from cot(π·theta).
    Iterate {
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Write the orbit as CSV instead of printing it.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Classify the exact angle orbit and show the matching radix expansion.
    Classify {
        #[command(flatten)]
        seeds: Seeds,
    },
    /// Radix expansion of a rational angle.
    Expand {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long, default_value_t = 100_000)]
        max_len: usize,
    },
    /// Finite-precision orbit against the exact closed form.
    Drift {
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long, default_value_t = 300)]
        steps: usize,
        #[arg(long, default_value_t = 0.5)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Largest gap between the iterated map and the closed form.
    Verify {
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long, default_value_t = 12)]
        steps: u64,
    },
    /// The function a one-step method is Newton's method on.
    Disguise {
        #[arg(long)]
        map: Method,
    },
    /// Basins of attraction of ±i as a PPM image.
    Render {
        #[arg(long, default_value = "newton")]
        map: Method,
        /// Centre as re,im.
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        #[arg(long, default_value_t = 4.0)]
        height: f64,
        #[arg(long, default_value_t = 512)]
        cols: usize,
        #[arg(long, default_value_t = 512)]
        rows: usize,
        #[arg(long, default_value_t = 60)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Darken pixels by iteration count.
        #[arg(long)]
        shade: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage<T>(e: Error) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(e.to_string()))
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs with the process arguments on the standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

struct ParsedSeeds {
    method: Method,
    t0: AngleArg,
    t1: Option<AngleArg>,
}

impl ParsedSeeds {
    fn new(seeds: &Seeds, digits: u32) -> std::result::Result<Self, Failure> {
        let t0 = parse_angle(&seeds.theta, digits).or_else(usage)?;
        let t1 = seeds
            .theta1
            .as_deref()
            .map(|t| parse_angle(t, digits))
            .transpose()
            .or_else(usage)?;
        match (seeds.method, &t1) {
            (Method::Secant, None) => return usage(Error::MissingSecondSeed("secant".into())),
            (m, Some(_)) if !m.is_secant() => {
                return usage(Error::UnexpectedSecondSeed(m.to_string()))
            }
            _ => {}
        }
        Ok(ParsedSeeds {
            method: seeds.method,
            t0,
            t1,
        })
    }

    fn rationals(&self) -> std::result::Result<(RationalAngle, Option<RationalAngle>), Failure> {
        let need = |a: &AngleArg| {
            a.rational()
                .cloned()
                .ok_or_else(|| Failure::Usage("this command needs p/q angles".into()))
        };
        let t0 = need(&self.t0)?;
        let t1 = self.t1.as_ref().map(need).transpose()?;
        Ok((t0, t1))
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let digits = cli.digits;
    let prec = PrecisionConfig::new(digits).or_else(usage)?;
    let io = |e: std::io::Error| Failure::Compute(Error::Io(e));
    match cli.command {
        Command::Iterate { seeds, steps, csv } => {
            let s = ParsedSeeds::new(&seeds, digits)?;
            let x0 = s.t0.cot(digits)?;
            let x1 = s.t1.as_ref().map(|t| t.cot(digits)).transpose()?;
            let orbit = iterate_float(s.method, &x0, x1.as_ref(), steps, prec)?;
            match csv {
                Some(path) => write_csv(&DriftReport::from_orbit(&orbit, digits), create(&path)?)?,
                None => {
                    for (n, x) in orbit.values.iter().enumerate() {
                        writeln!(out, "{n}\t{}", sci(x, digits)).map_err(io)?;
                    }
                }
            }
            for e in &orbit.pole_events {
                let kind = if e.exact { "pole" } else { "near pole" };
                writeln!(out, "{kind} at step {}", e.step).map_err(io)?;
            }
        }
        Command::Classify { seeds } => {
            let s = ParsedSeeds::new(&seeds, digits)?;
            let (t0, t1) = s.rationals()?;
            match s.method {
                Method::Secant => {
                    let class = classify_secant_orbit(&t0, t1.as_ref().expect("validated"));
                    writeln!(out, "{class}").map_err(io)?;
                }
                Method::Householder(_) => {
                    let m = s.method.multiplier().expect("householder");
                    let orbit = trace_orbit(&t0, m);
                    let expansion = exact::digits(&t0, m, 100_000)?;
                    writeln!(out, "{}\tbase {m}: {expansion}", orbit.class).map_err(io)?;
                    if orbit.visits_zero_value() {
                        writeln!(out, "visits x = 0 (angle 1/2)").map_err(io)?;
                    }
                }
                Method::Schroeder3 => {
                    return Err(Failure::Compute(Error::NotApplicable(
                        "schroeder3 has no angle dynamics".into(),
                    )))
                }
            }
        }
        Command::Expand {
            theta,
            base,
            max_len,
        } => {
            if base < 2 {
                return Err(Failure::Usage(format!("base {base} must be at least 2")));
            }
            let t = parse_angle(&theta, digits).or_else(usage)?;
            let t = t
                .rational()
                .ok_or_else(|| Failure::Usage("expand needs a p/q angle".into()))?;
            writeln!(out, "{}", exact::digits(t, base, max_len)?).map_err(io)?;
        }
        Command::Drift {
            seeds,
            steps,
            tol,
            csv,
        } => {
            let s = ParsedSeeds::new(&seeds, digits)?;
            let (t0, t1) = s.rationals()?;
            if tol.is_nan() || tol <= 0.0 {
                return Err(Failure::Usage(format!("tolerance {tol} must be positive")));
            }
            let tol = Float::with_val(64, tol);
            let report = drift_report(s.method, &t0, t1.as_ref(), steps, prec, &tol)?;
            let show = |n: Option<usize>| n.map_or("none".to_string(), |n| n.to_string());
            if let Some(class) = &report.exact_class {
                writeln!(out, "exact orbit: {class}").map_err(io)?;
            }
            writeln!(
                out,
                "first tolerance breach: {}",
                show(report.first_tol_breach)
            )
            .map_err(io)?;
            writeln!(
                out,
                "first period failure: {}",
                show(report.first_period_failure)
            )
            .map_err(io)?;
            if let Some(path) = csv {
                write_csv(&report, create(&path)?)?;
            }
        }
        Command::Verify { seeds, steps } => {
            let s = ParsedSeeds::new(&seeds, digits)?;
            let (t0, t1) = s.rationals()?;
            let err = verify_theorem(s.method, &t0, t1.as_ref(), steps, digits)?;
            writeln!(out, "max error over {steps} steps: {}", sci(&err, 6)).map_err(io)?;
        }
        Command::Disguise { map } => {
            let g = map
                .map()
                .ok_or_else(|| Failure::Usage("disguise needs a one-step method".into()))?;
            let h = newton_disguise(&g, digits)?;
            writeln!(out, "H(x) = {g}").map_err(io)?;
            writeln!(
                out,
                "x - H(x) = ({})/({})",
                g.fixed_point_polynomial(),
                g.den()
            )
            .map_err(io)?;
            writeln!(out, "h(x) = {h}").map_err(io)?;
            if let Some(real) = h.real_form(digits) {
                writeln!(out, "h(x) ∝ {real}").map_err(io)?;
            }
            for f in &h.factors {
                writeln!(
                    out,
                    "  root {}  exponent {}",
                    format_complex(&f.root, 12),
                    format_complex(&f.exponent, 12)
                )
                .map_err(io)?;
            }
            let residual = verify_disguise(&h, &g, 100, digits)?;
            writeln!(out, "residual: {}", sci(&residual, 4)).map_err(io)?;
        }
        Command::Render {
            map,
            center,
            width,
            height,
            cols,
            rows,
            max_iter,
            tol,
            shade,
            out: path,
        } => {
            let g = map
                .map()
                .ok_or_else(|| Failure::Usage("render needs a one-step method".into()))?;
            let center = parse_center(&center).or_else(usage)?;
            let grid = GridSpec::new(center, width, height, cols, rows).or_else(usage)?;
            if tol.is_nan() || tol <= 0.0 {
                return Err(Failure::Usage(format!("tolerance {tol} must be positive")));
            }
            let roots = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
            let img = render(&g, &grid, &roots, max_iter, tol)?;
            let mut file = create(&path)?;
            write_ppm(&img, &DEFAULT_PALETTE, shade, &mut file)?;
            file.flush().map_err(io)?;
            let count = |root| img.verdicts.iter().filter(|v| v.root == root).count();
            writeln!(
                out,
                "{} x {}: +i {}, -i {}, none {}",
                cols,
                rows,
                count(Some(0)),
                count(Some(1)),
                count(None)
            )
            .map_err(io)?;
        }
    }
    Ok(())
}

fn parse_center(text: &str) -> Result<Complex64> {
    let bad = || Error::InvalidGrid(format!("center {text:?} is not re,im"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(
            parse_angle("1/7", 32).unwrap(),
            AngleArg::Rational(RationalAngle::new(1, 7).unwrap())
        );
        match parse_angle("0.25", 32).unwrap() {
            AngleArg::Real(x) => assert_eq!(x, 0.25),
            other => panic!("{other:?}"),
        }
        match parse_angle("sqrt2/2", 40).unwrap() {
            AngleArg::Real(x) => assert!((x.to_f64() - 0.7071067811865475).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        for bad in ["", "1/0", "a/3", "pi", "1/2/3"] {
            assert!(
                matches!(parse_angle(bad, 32), Err(Error::AngleParse(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn centers() {
        assert_eq!(parse_center("-0.5, 1").unwrap(), Complex64::new(-0.5, 1.0));
        assert!(parse_center("1").is_err());
    }
}
