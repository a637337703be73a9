//! Randomized checks of the matrix and scalar inequalities behind the
//! certificates.

use szasz::verify::{lemma_trials, LemmaSuite};

fn main() -> szasz::Result<()> {
    for suite in LemmaSuite::ALL {
        let r = lemma_trials(suite, 5000, 0, 6)?;
        println!("{:<9} trials={} violations={} worst_margin={:.3e}", suite.name(), r.trials, r.violations, r.worst_log_margin);
    }
    Ok(())
}
