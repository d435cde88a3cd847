//! Closed-form eigenvectors: the stationary-measure vector of a positive
//! recurrent chain and the energy flow of a transient one, each certified
//! by its Rayleigh residual.
//!
//! ```text
//! cargo run --example eigenvectors
//! ```

use num_complex::Complex64;
use qwalk::birth_death::BDChain;
use qwalk::eigenspace::{psi_star, xi_star, DEFAULT_TAIL_TOL};
use qwalk::walk::{Arc, VerblunskySeq};

fn main() -> qwalk::Result<()> {
    for eta in [Complex64::new(0.4, 0.0), Complex64::new(-0.4, 0.0), Complex64::new(0.3, 0.5)] {
        let seq = VerblunskySeq::constant(eta)?;
        let chain = BDChain::from_walk(&seq)?;
        let p = chain.p(0);
        let pair = if p < 0.5 {
            psi_star(&chain, &seq, DEFAULT_TAIL_TOL)?
        } else {
            xi_star(&chain, &seq, DEFAULT_TAIL_TOL)?
        };
        println!("eta = {eta}, p = {p:.6}");
        println!("  source     {:?}", pair.source);
        println!("  eigenvalue {:.12}  (|lambda| = {:.15})", pair.eigenvalue, pair.eigenvalue.norm());
        println!("  norm^2     {:.12}  (1/|q - p| = {:.12})", pair.norm_sq(), 1.0 / (1.0 - 2.0 * p).abs());
        println!("  residual   {:e}", pair.residual);
        println!("  psi(0;R)   {:.12}", pair.vector.get(Arc::right(0)).re);
        println!("  support    {} arcs", pair.vector.iter().count());
    }
    Ok(())
}
