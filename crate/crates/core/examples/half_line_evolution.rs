//! Evolves the self-loop state under a walk with a site-dependent coin and
//! prints the site distribution every few steps.
//!
//! ```text
//! cargo run --example half_line_evolution
//! ```

use num_complex::Complex64;
use qwalk::walk::{evolve, step, step_moving, Arc, ArcState, VerblunskySeq, DEFAULT_SITE_CAP};

fn main() -> qwalk::Result<()> {
    let kappa = 0.2;
    let table = (0..8).map(|j| Complex64::new(0.1 * j as f64 - 0.3, kappa)).collect();
    let seq = VerblunskySeq::with_tail(table, Complex64::new(0.35, kappa))?;

    let states = evolve(&ArcState::delta(Arc::SELF_LOOP), &seq, 40, DEFAULT_SITE_CAP)?;
    for (t, s) in states.iter().enumerate().step_by(10) {
        let probs = s.site_probabilities();
        let head: Vec<String> = probs.iter().take(6).map(|p| format!("{p:.4}")).collect();
        println!("t = {t:2}  norm = {:.15}  P(0..6) = [{}]", s.norm_sqr(), head.join(", "));
    }

    // the two shift conventions describe the same operator
    let last = states.last().unwrap();
    let d = step(last, &seq).max_abs_diff(&step_moving(last, &seq));
    println!("\nflip-flop vs moving shift after 40 steps: {d:e}");
    Ok(())
}
