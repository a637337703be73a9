//! Converts a bidisk determinantal representation with a nontrivial
//! eigenvalue-one space into an upper-half-plane one and checks both
//! sides agree under the Cayley transform.

use szasz::detrep::{convert_bidisk, BidiskRep};
use szasz::C64;

fn main() -> szasz::Result<()> {
    let brep = BidiskRep::random_with_fixed_space(2, 2, 1, 0.8, 3)?;
    let conv = convert_bidisk(&brep, 1e-10)?;
    println!("size={} fixed_dim={}", conv.rep.size(), conv.split.fixed_dim);
    println!("check: {:?}", conv.check);
    println!("identity residual: {:.3e}", conv.imag_identity_residual()?);
    for z in [[C64::new(0.3, 0.7), C64::new(-1.0, 0.2)], [C64::new(2.0, 1.0), C64::new(0.0, 3.0)]] {
        let lhs = brep.eval_transferred(&z)?;
        let rhs = conv.rep.eval(&z)?;
        println!("z={z:?}: transferred={lhs:.6} converted={rhs:.6}");
    }
    Ok(())
}
