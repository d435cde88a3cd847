//! A single excitation at the boundary of the planar model: the mass kept
//! near `x = 0` compared with a walk without edge states, and the Fourier/CMV
//! reconstruction of the same evolution on a cylinder.
//!
//! ```text
//! cargo run --example planar_edge_state
//! ```

use std::f64::consts::PI;

use qwalk::ae::{fourier_reconstruct, gamma_step, AEParams, PlanarState, Topology};

fn evolve(s: &PlanarState, params: AEParams, n: usize) -> PlanarState {
    (0..n).fold(s.clone(), |acc, _| gamma_step(&acc, params))
}

fn main() -> qwalk::Result<()> {
    let edge = AEParams::new(5.0 * PI / 4.0, PI / 6.0);
    let free = AEParams::new(PI / 2.0, PI / 2.0);
    let start = PlanarState::delta(Topology::HalfPlane, 0, 0, 1);
    for n in [10, 20, 40] {
        let a = evolve(&start, edge, n).mass_up_to(2);
        let b = evolve(&start, free, n).mass_up_to(2);
        println!("n = {n:2}: mass at x <= 2, edge model {a:.5}, free model {b:.5}");
    }

    let cyl = PlanarState::delta(Topology::Cylinder(16), 0, 0, 1);
    let direct = evolve(&cyl, edge, 20);
    let recon = fourier_reconstruct(&cyl, edge, 20)?;
    println!("\ncylinder L = 16, 20 steps: direct vs Fourier/CMV max deviation {:e}", direct.max_abs_diff(&recon));
    let marginal = direct.x_marginal();
    let head: Vec<String> = marginal.iter().take(6).map(|p| format!("{p:.4}")).collect();
    println!("x marginal: [{}]", head.join(", "));
    Ok(())
}
