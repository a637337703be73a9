//! Which certificate is tightest where, for one stable polynomial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szasz::stability::generate_stable_product;
use szasz::verify::{compare_bounds, Region};
use szasz::Theorem;

fn main() -> szasz::Result<()> {
    let p = generate_stable_product(2, 3, 21);
    let p = p.scale(p.constant_term().inv());
    let thms = [Theorem::Det, Theorem::Coeff2, Theorem::Msz, Theorem::Bb];
    let bounds = thms.iter().map(|t| t.certificate(&p)).collect::<szasz::Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let region = Region::upper(3.0);
    let samples: Vec<_> = (0..1000).map(|_| region.sample(&mut rng, 2)).collect();
    let table = compare_bounds(&p, &bounds, &samples)?;
    for (t, n) in thms.iter().zip(&table.tightest) {
        println!("{:<8} tightest at {n}/{}", t.name(), samples.len());
    }
    Ok(())
}
