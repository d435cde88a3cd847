use std::f64::consts::TAU;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

/// Vertical (`beta`) and horizontal (`alpha`) coin angles, reduced mod `2pi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AEParams {
    alpha: f64,
    beta: f64,
}

fn reduce(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl AEParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        AEParams {
            alpha: reduce(alpha),
            beta: reduce(beta),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// The rotation `[[cos g, -sin g], [sin g, cos g]]`.
pub fn rotation(gamma: f64) -> Matrix2<Complex64> {
    let (s, c) = gamma.sin_cos();
    Matrix2::new(c, -s, s, c).map(|x| Complex64::new(x, 0.0))
}

pub fn eta_of_k(params: AEParams, k: f64) -> Complex64 {
    let (a, b) = (params.alpha, params.beta);
    Complex64::new(-(a + b).sin() * k.cos(), (a - b).sin() * k.sin())
}

pub fn rho_k(params: AEParams, k: f64) -> f64 {
    (1.0 - eta_of_k(params, k).norm_sqr()).max(0.0).sqrt()
}

/// `H_alpha diag(e^{-ik}, e^{ik}) H_beta`: the one-step symbol of a Fourier mode.
pub fn hhat(params: AEParams, k: f64) -> Matrix2<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let d = Matrix2::new(Complex64::from_polar(1.0, -k), zero, zero, Complex64::from_polar(1.0, k));
    rotation(params.alpha) * d * rotation(params.beta)
}

/// Gauge phases `omega(2j) = -j arg H00`, `omega(2j+1) = (j+1) arg H11`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Omega {
    pub arg00: f64,
    pub arg11: f64,
}

impl Omega {
    pub fn new(h: &Matrix2<Complex64>) -> Self {
        Omega {
            arg00: h[(0, 0)].arg(),
            arg11: h[(1, 1)].arg(),
        }
    }

    pub fn at(&self, n: usize) -> f64 {
        let j = (n / 2) as f64;
        if n.is_multiple_of(2) {
            -j * self.arg00
        } else {
            (j + 1.0) * self.arg11
        }
    }
}
