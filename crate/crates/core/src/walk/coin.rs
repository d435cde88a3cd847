use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use super::verblunsky::{VerblunskySeq, ASSUMPTION_TOL};
use crate::error::{Error, Result};

/// Local coin in the basis (from-right, from-left / self-loop).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coin(pub Matrix2<Complex64>);

impl Coin {
    /// `[[-eta, rho], [rho, conj(eta)]]` with `rho = sqrt(1 - |eta|^2)`.
    pub fn from_eta(eta: Complex64) -> Self {
        let rho = Complex64::new((1.0 - eta.norm_sqr()).max(0.0).sqrt(), 0.0);
        Coin(Matrix2::new(-eta, rho, rho, eta.conj()))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    /// The coin used with the moving shift: rows of `self` exchanged.
    pub fn rotated(&self) -> Self {
        let m = &self.0;
        Coin(Matrix2::new(m[(1, 0)], m[(1, 1)], m[(0, 0)], m[(0, 1)]))
    }

    #[inline]
    pub fn apply(&self, r: Complex64, l: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[(0, 0)] * r + m[(0, 1)] * l, m[(1, 0)] * r + m[(1, 1)] * l)
    }

    pub fn unitarity_defect(&self) -> f64 {
        (self.0.adjoint() * self.0 - Matrix2::identity()).norm()
    }

    pub fn det(&self) -> Complex64 {
        self.0.determinant()
    }
}

pub fn coin_at(seq: &VerblunskySeq, j: usize) -> Coin {
    Coin::from_eta(seq.eta(j))
}

/// The `(-i e^{i phi})`-eigenvector `[sqrt p, sqrt q]` of a coin whose
/// parameter has imaginary part `kappa = cos phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinEigenData {
    pub kappa: f64,
    pub phi: f64,
    pub p: f64,
    pub q: f64,
}

impl CoinEigenData {
    pub fn eigenvalue(&self) -> Complex64 {
        -Complex64::i() * Complex64::from_polar(1.0, self.phi)
    }

    pub fn vector(&self) -> Vector2<Complex64> {
        Vector2::new(Complex64::new(self.p.sqrt(), 0.0), Complex64::new(self.q.sqrt(), 0.0))
    }
}

pub fn coin_eigen(eta: Complex64, kappa: f64) -> Result<CoinEigenData> {
    if (eta.im - kappa).abs() > ASSUMPTION_TOL {
        return Err(Error::Domain(format!(
            "Im(eta) = {} does not match kappa = {kappa}",
            eta.im
        )));
    }
    let s = (1.0 - kappa * kappa).max(0.0).sqrt();
    if s == 0.0 || kappa.abs() >= 1.0 {
        return Err(Error::DegenerateCoin(format!(
            "|kappa| = {} leaves no room for a real part",
            kappa.abs()
        )));
    }
    let x = (eta.re / s).clamp(-1.0, 1.0);
    Ok(CoinEigenData {
        kappa,
        phi: kappa.clamp(-1.0, 1.0).acos(),
        p: 0.5 * (1.0 - x),
        q: 0.5 * (1.0 + x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ae::{eta_of_k, AEParams};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coin_examples() {
        let swap = Coin::from_eta(c(0.0, 0.0));
        assert_eq!(swap.0, Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)));
        let refl = Coin::from_eta(c(1.0, 0.0));
        assert_eq!(refl.0, Matrix2::new(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)));
        let seq = VerblunskySeq::constant(c(0.3, 0.4)).unwrap();
        assert!((seq.rho(5) - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((coin_at(&seq, 5).0[(0, 1)].re - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn coin_eigen_examples() {
        let e = coin_eigen(c(0.0, 0.0), 0.0).unwrap();
        assert_eq!((e.p, e.q), (0.5, 0.5));

        let eta = eta_of_k(AEParams::new(5.0 * PI / 4.0, PI / 6.0), 0.0);
        let e = coin_eigen(eta, eta.im).unwrap();
        assert!((e.p - 0.017_037_086_855_465_844).abs() < 1e-12, "{}", e.p);
        assert!((e.q - 0.982_962_913_144_534_1).abs() < 1e-12);

        let e = coin_eigen(c(0.3, 0.4), 0.4).unwrap();
        // sqrt(1 - 0.16) = 0.916515138991168
        assert!((e.p - 0.336_336_582_323_005_73).abs() < 1e-12, "{}", e.p);
        assert!((e.q - 0.663_663_417_676_994_2).abs() < 1e-12);
    }

    #[test]
    fn coin_eigen_rejects_degenerate() {
        assert!(matches!(coin_eigen(c(0.0, 1.0), 1.0), Err(Error::DegenerateCoin(_))));
        assert!(matches!(coin_eigen(c(0.0, 0.5), 0.2), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn coin_is_unitary(r in 0.0f64..=1.0, t in 0.0f64..(2.0 * PI)) {
            let coin = Coin::from_eta(Complex64::from_polar(r, t));
            prop_assert!(coin.unitarity_defect() < 1e-12);
            prop_assert!((coin.det().norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn eigen_residual(kappa in -0.99f64..0.99, u in -1.0f64..1.0) {
            let re = u * (1.0 - kappa * kappa).sqrt();
            let eta = c(re, kappa);
            let e = coin_eigen(eta, kappa).unwrap();
            let v = e.vector();
            let res = (Coin::from_eta(eta).0 * v - v * e.eigenvalue()).norm();
            prop_assert!(res <= 1e-12, "residual {}", res);
            prop_assert!((e.p + e.q - 1.0).abs() <= 1e-15);
        }
    }
}
