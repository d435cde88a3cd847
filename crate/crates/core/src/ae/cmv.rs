use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use super::params::{eta_of_k, hhat, AEParams, Omega};
use crate::error::Result;
use crate::spectrum::{self, Band};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Theta(a) = [[conj a, rho], [rho, -a]]`.
fn theta(a: Complex64) -> Matrix2<Complex64> {
    let rho = Complex64::new((1.0 - a.norm_sqr()).max(0.0).sqrt(), 0.0);
    Matrix2::new(a.conj(), rho, rho, -a)
}

/// Coefficients `(eta, 0, eta, 0, ...)` of length `n`.
pub fn ae_verblunsky(eta: Complex64, n: usize) -> Vec<Complex64> {
    (0..n).map(|i| if i % 2 == 0 { eta } else { ZERO }).collect()
}

/// `L = Theta_0 + Theta_2 + ...` and `M = 1 + Theta_1 + Theta_3 + ...`,
/// each cut to `n x n`.
pub fn lm_factors(coeffs: &[Complex64]) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let n = coeffs.len();
    let mut l = DMatrix::zeros(n, n);
    let mut m = DMatrix::zeros(n, n);
    let place = |target: &mut DMatrix<Complex64>, j: usize| {
        let b = theta(coeffs[j]);
        for r in 0..2 {
            for c in 0..2 {
                if j + r < n && j + c < n {
                    target[(j + r, j + c)] = b[(r, c)];
                }
            }
        }
    };
    for j in (0..n).step_by(2) {
        place(&mut l, j);
    }
    if n > 0 {
        m[(0, 0)] = Complex64::new(1.0, 0.0);
    }
    for j in (1..n).step_by(2) {
        place(&mut m, j);
    }
    (l, m)
}

pub struct CMVData {
    pub k: f64,
    pub eta: Complex64,
    pub verblunsky: Vec<Complex64>,
    pub matrix: DMatrix<Complex64>,
    pub hhat: Matrix2<Complex64>,
    pub omega: Omega,
}

impl CMVData {
    pub fn band(&self) -> Band {
        Band::from_rho((1.0 - self.eta.norm_sqr()).max(0.0).sqrt())
    }

    /// Eigenvalues in the spectral gap, with isolation margin `10 / N`.
    pub fn isolated_eigenvalues(&self) -> Result<Vec<Complex64>> {
        let n = self.matrix.nrows();
        let eigs = spectrum::eigenvalues(&self.matrix)?;
        Ok(spectrum::isolated(&eigs, self.band(), 10.0 / n as f64))
    }
}

pub fn cmv_matrix(params: AEParams, k: f64, n: usize) -> CMVData {
    assert!(n >= 4 && n.is_multiple_of(2), "CMV truncation size must be even and at least 4");
    let eta = eta_of_k(params, k);
    let verblunsky = ae_verblunsky(eta, n);
    let (l, m) = lm_factors(&verblunsky);
    let h = hhat(params, k);
    CMVData {
        k,
        eta,
        verblunsky,
        matrix: l * m,
        hhat: h,
        omega: Omega::new(&h),
    }
}

/// `f -> C^T f` for the sequence `(eta, 0, eta, 0, ...)`, with `C^T = M L`.
///
/// The vector is treated as the head of an infinite one; callers keep its
/// support away from the end.
pub fn apply_cmv_transpose(eta: Complex64, f: &mut [Complex64]) {
    let b = theta(eta);
    for pair in f.chunks_exact_mut(2) {
        let (u, v) = (pair[0], pair[1]);
        pair[0] = b[(0, 0)] * u + b[(0, 1)] * v;
        pair[1] = b[(1, 0)] * u + b[(1, 1)] * v;
    }
    // Theta(0) swaps
    if f.len() > 1 {
        for pair in f[1..].chunks_exact_mut(2) {
            pair.swap(0, 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn family() -> AEParams {
        AEParams::new(5.0 * PI / 4.0, PI / 6.0)
    }

    #[test]
    fn interior_columns_are_isometric() {
        let d = cmv_matrix(family(), 0.3, 40);
        for col in 0..38 {
            let n = d.matrix.column(col).norm();
            assert!((n - 1.0).abs() < 1e-12, "column {col}");
        }
        assert!((d.hhat.adjoint() * d.hhat - Matrix2::identity()).norm() < 1e-12);
    }

    #[test]
    fn free_cmv_has_no_isolated_point() {
        // all coefficients zero: alpha + beta = 0 mod pi and k chosen so Im eta = 0
        let p = AEParams::new(0.0, 0.0);
        let d = cmv_matrix(p, 0.7, 100);
        assert_eq!(d.eta, Complex64::new(0.0, 0.0));
        assert!(d.isolated_eigenvalues().unwrap().is_empty());
    }

    #[test]
    fn small_cmv_isolated_eigenvalue() {
        // k = 0: isolated eigenvalue at 1
        let d = cmv_matrix(family(), 0.0, 120);
        let iso = d.isolated_eigenvalues().unwrap();
        assert_eq!(iso.len(), 1);
        assert!((iso[0] - Complex64::new(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn transpose_action_matches_matrix() {
        let d = cmv_matrix(family(), 1.3, 16);
        let mut f: Vec<Complex64> = (0..16).map(|i| Complex64::new(i as f64 * 0.1, -0.05 * i as f64)).collect();
        f[14] = ZERO;
        f[15] = ZERO;
        let v = nalgebra::DVector::from_column_slice(&f);
        let expected = d.matrix.transpose() * v;
        apply_cmv_transpose(d.eta, &mut f);
        for i in 0..14 {
            assert!((f[i] - expected[i]).norm() < 1e-14, "row {i}");
        }
    }
}
