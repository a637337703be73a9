//! Gradient and Hessian at the origin read off a determinantal
//! representation, compared with the expanded polynomial.

use szasz::stability::generate_stable_detrep;

fn main() -> szasz::Result<()> {
    let (rep, p) = generate_stable_detrep(3, 4, 9)?;
    let t = rep.trace_identities()?;
    let p = p.scale(p.constant_term().inv());
    let grad = p.gradient_at_zero();
    let hess = p.hessian_at_zero();
    let gerr = t.gradient.iter().zip(&grad).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("gradient: {:?}", t.gradient);
    println!("max gradient error: {gerr:.3e}");
    println!("hessian error: {:.3e}", (&t.hessian - &hess).norm());
    Ok(())
}
