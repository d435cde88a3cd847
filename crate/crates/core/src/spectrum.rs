//! Dense diagonalization and the band geometry of constant-parameter walks.

use std::f64::consts::{PI, TAU};

use nalgebra::{linalg::Schur, DMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub fn eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 0).ok_or(Error::NoConvergence)?;
    let ev = schur.eigenvalues().ok_or(Error::NoConvergence)?;
    Ok(ev.iter().copied().collect())
}

/// Angle of `z` reduced to `[0, 2pi)`.
pub fn phase(z: Complex64) -> f64 {
    let t = z.arg().rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// The continuous spectrum `{e^{i theta} : |cos theta| <= rho}`, i.e. the
/// arcs `[theta_c, pi - theta_c]` and `[pi + theta_c, 2pi - theta_c]` with
/// `theta_c = arccos rho`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Band {
    pub theta_c: f64,
}

impl Band {
    pub fn from_rho(rho: f64) -> Self {
        Band {
            theta_c: rho.clamp(0.0, 1.0).acos(),
        }
    }

    pub fn intervals(&self) -> [(f64, f64); 2] {
        let t = self.theta_c;
        [(t, PI - t), (PI + t, TAU - t)]
    }

    /// Distance along the unit circle from `e^{i theta}` to the band.
    pub fn arc_distance(&self, theta: f64) -> f64 {
        let theta = theta.rem_euclid(TAU);
        let mut best = f64::INFINITY;
        for (lo, hi) in self.intervals() {
            if (lo..=hi).contains(&theta) {
                return 0.0;
            }
            for end in [lo, hi] {
                let d = (theta - end).abs();
                best = best.min(d.min(TAU - d));
            }
        }
        best
    }
}

/// Eigenvalues of a truncated unitary that sit in a spectral gap.
///
/// An eigenvalue counts when it is within `margin` of the unit circle and
/// more than `margin` (in arc length) away from the band. Truncation
/// artefacts sit strictly inside the disc, so the modulus condition removes
/// them.
pub fn isolated(eigs: &[Complex64], band: Band, margin: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = eigs
        .iter()
        .copied()
        .filter(|z| z.norm() >= 1.0 - margin && band.arc_distance(phase(*z)) > margin)
        .collect();
    out.sort_by(|a, b| phase(*a).total_cmp(&phase(*b)));
    out
}
