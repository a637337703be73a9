//! Every applicable certificate for a stable product in two variables,
//! verified by sampling.

use szasz::stability::generate_stable_product;
use szasz::verify::{verify_bound, Region, VIOLATION_TOL};
use szasz::Theorem;

fn main() -> szasz::Result<()> {
    let p = generate_stable_product(2, 4, 11);
    let p = p.scale(p.constant_term().inv());
    for thm in [Theorem::Bb, Theorem::Det, Theorem::Coeff2, Theorem::Coeffn, Theorem::Msz, Theorem::Real] {
        let b = match thm.certificate(&p) {
            Ok(b) => b,
            Err(e) => {
                println!("{:<8} skipped: {e}", thm.name());
                continue;
            }
        };
        let region = if b.domain == szasz::BoundDomain::RealPointsOnly { Region::real(2.0) } else { Region::complex(2.0) };
        let rep = verify_bound(&p, &b, &region, 2000, 1, VIOLATION_TOL)?;
        println!("{:<8} violations={} worst_margin={:.4}", thm.name(), rep.violations, rep.worst_log_margin);
    }
    Ok(())
}
