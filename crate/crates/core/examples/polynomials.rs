//! Sparse multivariate arithmetic: products, derivatives, homogeneous
//! parts, plane restriction and the Cayley substitution.

use szasz::{MultiPoly, C64};

fn main() -> szasz::Result<()> {
    let one = C64::new(1.0, 0.0);
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let p = &(&MultiPoly::one(2) + &x) * &(&MultiPoly::one(2) + &(&x * &y).scale(C64::new(0.0, 2.0)));
    println!("p = {}", serde_json::to_string(&p).unwrap());
    println!("total degree {}, bidegree {:?}", p.total_degree(), p.bidegree()?);
    println!("d/dz1 p = {}", serde_json::to_string(&p.partial_derivative(0)?).unwrap());

    let h = p.homogeneous_parts(0.0)?;
    for (d, part) in h.parts() {
        println!("degree {d}: {} terms", part.len());
    }
    assert_eq!(h.reassemble(), p);

    // q(w1, w2) = p(w1 + w2, w1 - w2)
    let q = p.restrict_to_plane(&[one, one], &[one, -one])?;
    println!("restriction to a plane: {} terms, degree {}", q.len(), q.total_degree());

    let w = p.cayley_substitute(None)?;
    println!("Cayley image has {} terms", w.len());
    let back = w.cayley_inverse(p.bidegree()?)?;
    println!("round trip error {:.2e}", (&back - &p).max_abs_coeff());
    Ok(())
}
