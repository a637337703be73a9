//! The quadratic constant cannot be lowered: a family of stable
//! polynomials approaches exp(γy²) on the imaginary axis.

use szasz::verify::sharpness_run;

fn main() -> szasz::Result<()> {
    let (c1, c2) = (1.0, -0.5);
    let rows = sharpness_run(c1, c2, &[1, 4, 16, 64, 256, 1024], &[0.5, 1.0, 2.0])?;
    println!("{:>6} {:>5} {:>14} {:>14} {:>8}", "n", "y", "|p_n(iy)|", "target", "ratio");
    for r in rows {
        println!("{:>6} {:>5.1} {:>14.6} {:>14.6} {:>8.5}", r.n, r.y, r.abs_p, r.target, r.ratio);
    }
    Ok(())
}
