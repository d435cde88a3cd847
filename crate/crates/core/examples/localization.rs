//! Time-averaged return probability to the self-loop against the lower
//! bound from the eigenvector overlap.
//!
//! ```text
//! cargo run --release --example localization
//! ```

use qwalk::birth_death::BDChain;
use qwalk::eigenspace::{localization_bound, point_spectrum, DEFAULT_MAX_SITES, DEFAULT_TAIL_TOL};
use qwalk::walk::{Arc, VerblunskySeq};

fn main() -> qwalk::Result<()> {
    let horizon = 2000;
    for p in [0.2, 0.3, 0.5, 0.7, 0.8] {
        let eta = qwalk::cli::eta_for(p, 0.0)?;
        let seq = VerblunskySeq::constant(eta)?;
        let chain = BDChain::from_walk(&seq)?;
        let pairs: Vec<_> = point_spectrum(&chain, &seq, DEFAULT_TAIL_TOL, DEFAULT_MAX_SITES)?
            .into_iter()
            .collect();
        let b = localization_bound(&seq, &pairs, Arc::SELF_LOOP, horizon)?;
        println!("p = {p:.1}: time average over {horizon} steps {:.5}, bound {:.5}", b.time_avg, b.bound);
    }
    Ok(())
}
