//! Polynomials with a zero of order r at the origin: the one-variable
//! certificate, the order-aware two-variable certificate in both its
//! stated and corrected linear-coefficient forms, and the higher-order
//! Hessian bound.

use szasz::bounds::{bisz2_bound, bisz2_bound_corrected, msz2_bound, szasz_1d_vanishing};
use szasz::stability::generate_vanishing_product;
use szasz::verify::{verify_bound, Region, VIOLATION_TOL};
use szasz::{MultiPoly, C64};

fn main() -> szasz::Result<()> {
    let q = MultiPoly::from_coeffs_1d(&[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.5, 0.0)]);
    let b = szasz_1d_vanishing(&q, 2)?;
    println!("z^2 + z^3/2, order 2: {}", szasz::cli::describe(&b));

    // z1 + z2/2 is stable and vanishes to order one; the stated form is
    // refuted at a real point, the corrected one is not.
    let lin = MultiPoly::from_terms(2, [(vec![1, 0], C64::new(1.0, 0.0)), (vec![0, 1], C64::new(0.5, 0.0))])?;
    let h = lin.homogeneous_parts(0.0)?;
    let z = [C64::new(-1.0, 0.0), C64::new(0.0, 0.0)];
    for (name, b) in [("stated", bisz2_bound(&lin, &h)?), ("corrected", bisz2_bound_corrected(&lin, &h)?)] {
        println!("{name:>9}: |p(z)|={:.4} bound={:.4}", lin.evaluate(&z)?.norm(), b.evaluate(&z)?);
    }

    let p = generate_vanishing_product(3, 4, 1, 5);
    let h = p.homogeneous_parts(1e-14)?;
    let b = msz2_bound(&p, &h)?;
    let rep = verify_bound(&p, &b, &Region::upper(2.0), 5000, 2, VIOLATION_TOL)?;
    println!("order-{} product in 3 vars: violations={} of {}", h.vanishing_order(), rep.violations, rep.trials);
    Ok(())
}
