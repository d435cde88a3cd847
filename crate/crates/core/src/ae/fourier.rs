use std::f64::consts::TAU;

use num_complex::Complex64;

use super::cmv::apply_cmv_transpose;
use super::params::{eta_of_k, hhat, AEParams, Omega};
use super::planar::{PlanarState, Topology};
use crate::error::{Error, Result};
use crate::walk::DEFAULT_SITE_CAP;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Gamma^n state0` on a cylinder, computed mode by mode: each Fourier mode
/// is moved into CMV coordinates with the gauge `f = e^{-i omega} phi_hat`,
/// evolved by `(C_k^T)^n` and moved back.
pub fn fourier_reconstruct(state0: &PlanarState, params: AEParams, n: usize) -> Result<PlanarState> {
    let window = state0.max_x().unwrap_or(0) + n + 2;
    fourier_reconstruct_windowed(state0, params, n, window)
}

/// As [`fourier_reconstruct`] with an explicit number of sites kept per mode.
pub fn fourier_reconstruct_windowed(
    state0: &PlanarState,
    params: AEParams,
    n: usize,
    window: usize,
) -> Result<PlanarState> {
    let Topology::Cylinder(l) = state0.topology() else {
        return Err(Error::Domain("Fourier reconstruction needs a cylinder".into()));
    };
    let reach = state0.max_x().unwrap_or(0) + n;
    if window <= reach + 1 {
        return Err(Error::ResourceCap {
            what: "CMV window (sites)",
            needed: reach + 2,
            cap: window,
        });
    }
    if window > DEFAULT_SITE_CAP {
        return Err(Error::ResourceCap {
            what: "CMV window (sites)",
            needed: window,
            cap: DEFAULT_SITE_CAP,
        });
    }

    let modes: Vec<Vec<[Complex64; 2]>> = (0..l)
        .map(|m| {
            let k = TAU * m as f64 / l as f64;
            let omega = Omega::new(&hhat(params, k));
            let eta = eta_of_k(params, k);

            let mut hat = vec![[ZERO; 2]; window];
            for ((x, y), v) in state0.iter() {
                let ph = Complex64::from_polar(1.0, k * y as f64);
                hat[x][0] += v[0] * ph;
                hat[x][1] += v[1] * ph;
            }
            let mut f = vec![ZERO; 2 * window];
            for (x, h) in hat.iter().enumerate() {
                f[2 * x] = Complex64::from_polar(1.0, -omega.at(2 * x)) * h[1];
                f[2 * x + 1] = Complex64::from_polar(1.0, -omega.at(2 * x + 1)) * h[0];
            }
            for _ in 0..n {
                apply_cmv_transpose(eta, &mut f);
            }
            (0..=reach)
                .map(|x| {
                    [
                        Complex64::from_polar(1.0, omega.at(2 * x + 1)) * f[2 * x + 1],
                        Complex64::from_polar(1.0, omega.at(2 * x)) * f[2 * x],
                    ]
                })
                .collect()
        })
        .collect();

    let mut out = PlanarState::new(state0.topology());
    let scale = 1.0 / l as f64;
    for x in 0..=reach {
        for y in 0..l {
            let mut v = [ZERO; 2];
            for (m, mode) in modes.iter().enumerate() {
                let k = TAU * m as f64 / l as f64;
                let ph = Complex64::from_polar(scale, -k * y as f64);
                v[0] += mode[x][0] * ph;
                v[1] += mode[x][1] * ph;
            }
            out.set(x, y as i64, v);
        }
    }
    Ok(out)
}
