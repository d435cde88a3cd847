use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::params::{eta_of_k, AEParams};
use crate::birth_death::{classify, BDChain, ClassTag, DEFAULT_CLASSIFY_TOL, DEFAULT_MAX_TERMS};
use crate::error::{Error, Result};
use crate::format;
use crate::spectrum::Band;
use crate::walk::{coin_eigen, ASSUMPTION_TOL};

/// Radicand tolerance of the band-edge formula.
pub const RADICAND_TOL: f64 = 1e-12;
/// Below this `|sin(alpha - beta)|` or `|q - p|` counts as zero.
pub const EDGE_TOL: f64 = 1e-12;

/// `arccos sqrt(cos^2(alpha - beta) - sin 2alpha sin 2beta cos^2 k)`.
pub fn theta_c(params: AEParams, k: f64) -> Result<f64> {
    let (a, b) = (params.alpha(), params.beta());
    let r = (a - b).cos().powi(2) - (2.0 * a).sin() * (2.0 * b).sin() * k.cos().powi(2);
    if !(-RADICAND_TOL..=1.0 + RADICAND_TOL).contains(&r) {
        return Err(Error::Domain(format!("band-edge radicand {r} outside [0, 1]")));
    }
    Ok(r.clamp(0.0, 1.0).sqrt().acos())
}

/// `m_0 = |Re eta| / sqrt(1 - Im^2 eta)`, or 1 on a reflecting coin.
pub fn mass(eta: Complex64) -> f64 {
    let rho2 = 1.0 - eta.norm_sqr();
    if rho2 <= 0.0 {
        return 1.0;
    }
    eta.re.abs() / (1.0 - eta.im * eta.im).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgePoint {
    pub theta0: f64,
    pub m0: f64,
}

pub fn edge_point(params: AEParams, k: f64) -> Option<EdgePoint> {
    let eta = eta_of_k(params, k);
    let m0 = mass(eta);
    if (params.alpha() - params.beta()).sin().abs() <= EDGE_TOL || m0 <= EDGE_TOL {
        return None;
    }
    let s = (-eta.im).clamp(-1.0, 1.0).asin();
    let theta0 = if eta.re >= 0.0 { s } else { PI - s };
    Some(EdgePoint {
        theta0: theta0.rem_euclid(TAU),
        m0,
    })
}

/// Recurrence class of a Fourier mode's chain. `Degenerate` marks
/// `rho(k) = 0`, where the coin is diagonal and the chain never moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeClass {
    PositiveRecurrent,
    NullRecurrent,
    Transient,
    Degenerate,
}

impl ModeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeClass::PositiveRecurrent => "positive_recurrent",
            ModeClass::NullRecurrent => "null_recurrent",
            ModeClass::Transient => "transient",
            ModeClass::Degenerate => "degenerate",
        }
    }
}

pub fn classify_k(params: AEParams, k: f64) -> Result<ModeClass> {
    let eta = eta_of_k(params, k);
    let data = coin_eigen(eta, eta.im)?;
    if 1.0 - eta.norm_sqr() <= ASSUMPTION_TOL * ASSUMPTION_TOL {
        return Ok(ModeClass::Degenerate);
    }
    let chain = BDChain::constant(data.p)?;
    let class = match classify(&chain, DEFAULT_MAX_TERMS, DEFAULT_CLASSIFY_TOL).tag() {
        ClassTag::PositiveRecurrent => ModeClass::PositiveRecurrent,
        ClassTag::NullRecurrent => ModeClass::NullRecurrent,
        ClassTag::Transient => ModeClass::Transient,
        ClassTag::Undetermined => unreachable!("constant chains always classify"),
    };
    let expected = if (data.q - data.p).abs() <= DEFAULT_CLASSIFY_TOL {
        ModeClass::NullRecurrent
    } else if eta.re > 0.0 {
        ModeClass::PositiveRecurrent
    } else {
        ModeClass::Transient
    };
    assert_eq!(class, expected, "class disagrees with sign of Re eta at k = {k}");
    Ok(class)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierRecord {
    pub k: f64,
    pub eta: (f64, f64),
    pub rho: f64,
    pub m0: f64,
    pub theta0: Option<f64>,
    pub theta_c: f64,
    pub class: ModeClass,
}

impl FourierRecord {
    pub fn band(&self) -> Band {
        Band { theta_c: self.theta_c }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DispersionTable {
    pub params: AEParams,
    pub rows: Vec<FourierRecord>,
}

pub fn record(params: AEParams, k: f64) -> Result<FourierRecord> {
    let eta = eta_of_k(params, k);
    Ok(FourierRecord {
        k,
        eta: (eta.re, eta.im),
        rho: (1.0 - eta.norm_sqr()).max(0.0).sqrt(),
        m0: mass(eta),
        theta0: edge_point(params, k).map(|e| e.theta0),
        theta_c: theta_c(params, k)?,
        class: classify_k(params, k)?,
    })
}

/// Records on `k_m = 2 pi m / M`, `m = 0..M`.
pub fn dispersion_table(params: AEParams, m: usize) -> Result<DispersionTable> {
    if m < 2 {
        return Err(Error::Domain(format!("grid size {m} must be at least 2")));
    }
    let rows = (0..m)
        .map(|i| record(params, TAU * i as f64 / m as f64))
        .collect::<Result<_>>()?;
    Ok(DispersionTable { params, rows })
}

impl DispersionTable {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# qwalk dispersion v1")?;
        writeln!(w, "k,theta_c,band_lo1,band_hi1,band_lo2,band_hi2,theta_0,mass,class")?;
        for r in &self.rows {
            let [(lo1, hi1), (lo2, hi2)] = r.band().intervals();
            let t0 = r.theta0.map(format::real).unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                format::real(r.k),
                format::real(r.theta_c),
                format::real(lo1),
                format::real(hi1),
                format::real(lo2),
                format::real(hi2),
                t0,
                format::real(r.m0),
                r.class.as_str()
            )?;
        }
        Ok(())
    }
}
