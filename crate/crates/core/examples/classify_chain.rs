//! Recurrence classes of a few birth-death chains, constant and tabled.
//!
//! ```text
//! cargo run --example classify_chain
//! ```

use qwalk::birth_death::{classify, stationary, BDChain, ClassificationReport, DEFAULT_CLASSIFY_TOL, DEFAULT_MAX_TERMS};

fn main() -> qwalk::Result<()> {
    let chains = [
        ("constant p = 0.3", BDChain::constant(0.3)?),
        ("constant p = 0.5", BDChain::constant(0.5)?),
        ("constant p = 0.7", BDChain::constant(0.7)?),
        ("prefix then p = 0.45", BDChain::with_tail(vec![0.9, 0.8, 0.7, 0.6], 0.45)?),
        ("table, unknown tail", BDChain::explicit(vec![0.2, 0.4, 0.3])?),
    ];
    for (name, chain) in &chains {
        let class = classify(chain, DEFAULT_MAX_TERMS, DEFAULT_CLASSIFY_TOL);
        let report = ClassificationReport::new(&class, qwalk::birth_death::terms_needed(chain));
        println!("{name:24} {}", serde_json::to_string(&report).unwrap());
    }

    let pi = stationary(&BDChain::constant(0.3)?)?;
    println!("\nstationary distribution of p = 0.3:");
    for (j, p) in pi.probs(6).iter().enumerate() {
        println!("  pi({j}) = {p:.6}");
    }
    Ok(())
}
