//! Direct big-float iteration against the cotangent closed form, for real
//! seeds and for complex seeds heading to ±i.
//!
//!     cargo run --example closed_form

use chaotic_roots::disguise::format_complex;
use chaotic_roots::exact::RationalAngle;
use chaotic_roots::oracle::{
    closed_form_iterate, complex_theta, deviation_pair, iterate_complex, predict_basin,
    verify_theorem, ClosedForm,
};
use chaotic_roots::precision::sci;
use chaotic_roots::Method;
use rug::{Complex, Float};

fn main() -> chaotic_roots::Result<()> {
    let digits = 60;
    for (method, p, q) in [
        (Method::NEWTON, 1, 5),
        (Method::HALLEY, 1, 7),
        (Method::Householder(3), 2, 9),
        (Method::Householder(4), 3, 11),
    ] {
        let t0 = RationalAngle::new(p, q)?;
        let err = verify_theorem(method, &t0, None, 12, digits)?;
        println!(
            "{method:<14} t0 = {t0:<5} max error over 12 steps: {}",
            sci(&err, 3)
        );
    }

    // Exact angle reduction keeps step 200 as accurate as step 2.
    let t0 = RationalAngle::new(1, 7)?;
    if let ClosedForm::Value(x) = closed_form_iterate(Method::HALLEY, 200, &t0, None, 30)? {
        println!("\nHalley x_200 from pi/7: {}", sci(&x, 30));
    }

    let x0 = Complex::with_val(256, (0.3, 0.05));
    let theta = complex_theta(&x0)?;
    println!(
        "\nseed {} has angle {:.6} {:+.6}i",
        format_complex(&x0, 8),
        theta.alpha.to_f64(),
        theta.beta.to_f64()
    );
    println!("predicted basin: {:?}", predict_basin(&x0));
    let orbit = iterate_complex(Method::NEWTON, &x0, 8, 70)?;
    for n in [2u32, 4, 8] {
        let dev = deviation_pair(1, n, &theta, 70)?;
        let x = &orbit[n as usize];
        let gap = Complex::with_val(256, x - Complex::with_val(256, (0, 1))) - &dev.minus;
        println!(
            "n = {n}: x_n = {:<34} |x_n - i - closed form| = {}",
            format_complex(x, 12),
            sci(&Float::with_val(256, gap.abs_ref()), 2)
        );
    }
    Ok(())
}
