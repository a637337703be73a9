//! One-variable certificates for a random stable polynomial, checked along
//! the imaginary axis where growth is largest.

use szasz::bounds::{szasz_improved, szasz_original};
use szasz::stability::generate_stable_1d;
use szasz::C64;

fn main() -> szasz::Result<()> {
    let p = generate_stable_1d(6, 7);
    let p = p.scale(p.constant_term().inv());
    let orig = szasz_original(&p)?;
    let impr = szasz_improved(&p)?;
    println!("original: {}", szasz::cli::describe(&orig));
    println!("improved: {}", szasz::cli::describe(&impr));
    println!("{:>6} {:>14} {:>14} {:>14}", "y", "log|p(iy)|", "original", "improved");
    for k in 0..=8 {
        let z = [C64::new(0.0, 0.5 * k as f64)];
        let lp = p.evaluate(&z)?.norm().ln();
        println!("{:>6.2} {:>14.6} {:>14.6} {:>14.6}", z[0].im, lp, orig.evaluate_log(&z)?, impr.evaluate_log(&z)?);
    }
    Ok(())
}
