//! Root-based stability in one variable and randomized refutation in
//! several. Sampling can refute stability but never certify it.

use szasz::stability::{generate_stable_product, is_stable_1d, refute_stability};
use szasz::{MultiPoly, C64};

fn main() -> szasz::Result<()> {
    let stable = MultiPoly::from_coeffs_1d(&[C64::new(1.0, 0.0), C64::new(0.0, -1.0)]);
    let unstable = MultiPoly::from_coeffs_1d(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    for (name, p) in [("1 - iz", &stable), ("1 + z^2", &unstable)] {
        let v = is_stable_1d(p, 1e-9)?;
        println!("{name:>8}: {:?} roots={:?}", v.status, v.roots);
    }

    let p = generate_stable_product(3, 3, 4);
    println!("product: {:?}", refute_stability(&p, 2.0, 20000, 1, 1e-9).status);
    // vanishes at z1 = z2 = i
    let bad = MultiPoly::from_terms(2, [(vec![0, 0], C64::new(1.0, 0.0)), (vec![1, 1], C64::new(1.0, 0.0))])?;
    let v = refute_stability(&bad, 2.0, 20000, 1, 1e-9);
    println!("1 + z1 z2: {:?} witness={:?}", v.status, v.witness);
    Ok(())
}
