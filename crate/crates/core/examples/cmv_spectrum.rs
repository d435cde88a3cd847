//! Dense diagonalization of a truncated CMV matrix per Fourier mode, showing
//! the isolated eigenvalue in the gap when the mode's chain is recurrent or
//! transient and none when it is null recurrent.
//!
//! ```text
//! cargo run --release --example cmv_spectrum
//! ```

use std::f64::consts::PI;

use qwalk::ae::{classify_k, cmv_matrix, edge_point, AEParams};

fn main() -> qwalk::Result<()> {
    let params = AEParams::new(5.0 * PI / 4.0, PI / 6.0);
    let n = 200;
    for k in [0.0, 0.3, PI / 2.0, PI, 4.0] {
        let cmv = cmv_matrix(params, k, n);
        let iso = cmv.isolated_eigenvalues()?;
        let class = classify_k(params, k)?;
        let expected = edge_point(params, k).map(|e| e.theta0);
        println!("k = {k:.4}  class {:18}  theta_c = {:.6}", class.as_str(), cmv.band().theta_c);
        match expected {
            Some(t) => println!("  expected edge e^(i {t:.6})"),
            None => println!("  no edge point expected"),
        }
        for z in iso {
            println!("  isolated {z:.10}  |z| = {:.12}", z.norm());
        }
    }
    Ok(())
}
