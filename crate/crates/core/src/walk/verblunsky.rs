use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::ae::AEParams;
use crate::error::{Error, Result};
use crate::format;

/// Tolerance for `|eta| <= 1` and for the constant-imaginary-part check.
pub const ASSUMPTION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Constant,
    TableThenTail,
    AeFourier,
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
enum Rule {
    Constant(Complex64),
    Table {
        table: Vec<Complex64>,
        tail: Option<Complex64>,
    },
    Ae {
        params: AEParams,
        k: f64,
        eta: Complex64,
    },
}

/// The Verblunsky parameters `j -> eta_j` of a half-line walk.
///
/// An explicit table without a declared tail holds its final entry past the
/// end of the table, but the tail is not treated as known: recurrence
/// classification of such a sequence is never certified.
#[derive(Clone, Debug, PartialEq)]
pub struct VerblunskySeq {
    rule: Rule,
    kappa: Option<f64>,
}

fn check_disc(site: usize, z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() || z.norm() > 1.0 + ASSUMPTION_TOL {
        return Err(Error::OutsideDisc {
            site,
            value: format::complex(z),
        });
    }
    Ok(())
}

impl VerblunskySeq {
    pub fn constant(eta: Complex64) -> Result<Self> {
        check_disc(0, eta)?;
        Ok(Self {
            rule: Rule::Constant(eta),
            kappa: Some(eta.im),
        })
    }

    pub fn with_tail(table: Vec<Complex64>, tail: Complex64) -> Result<Self> {
        Self::from_table(table, Some(tail))
    }

    pub fn explicit(table: Vec<Complex64>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::Parse("explicit Verblunsky table is empty".into()));
        }
        Self::from_table(table, None)
    }

    fn from_table(table: Vec<Complex64>, tail: Option<Complex64>) -> Result<Self> {
        for (j, z) in table.iter().enumerate() {
            check_disc(j, *z)?;
        }
        if let Some(t) = tail {
            check_disc(table.len(), t)?;
        }
        let mut all = table.iter().copied().chain(tail);
        let first = all.next().map(|z| z.im);
        let constant = first.filter(|k| all.all(|z| (z.im - k).abs() <= ASSUMPTION_TOL));
        Ok(Self {
            rule: Rule::Table { table, tail },
            kappa: constant,
        })
    }

    /// The Fourier mode of the planar walk at wave number `k`.
    pub fn ae_fourier(params: AEParams, k: f64) -> Self {
        let eta = crate::ae::eta_of_k(params, k);
        Self {
            rule: Rule::Ae { params, k, eta },
            kappa: Some(eta.im),
        }
    }

    pub fn flavor(&self) -> Flavor {
        match &self.rule {
            Rule::Constant(_) => Flavor::Constant,
            Rule::Table { tail: Some(_), .. } => Flavor::TableThenTail,
            Rule::Table { tail: None, .. } => Flavor::Explicit,
            Rule::Ae { .. } => Flavor::AeFourier,
        }
    }

    pub fn eta(&self, j: usize) -> Complex64 {
        match &self.rule {
            Rule::Constant(z) => *z,
            Rule::Ae { eta, .. } => *eta,
            Rule::Table { table, tail } => match table.get(j) {
                Some(z) => *z,
                None => tail.unwrap_or_else(|| *table.last().expect("nonempty table")),
            },
        }
    }

    pub fn rho(&self, j: usize) -> f64 {
        (1.0 - self.eta(j).norm_sqr()).max(0.0).sqrt()
    }

    /// Length of the site-dependent prefix; every site from here on shares
    /// one parameter.
    pub fn prefix_len(&self) -> usize {
        match &self.rule {
            Rule::Table { table, .. } => table.len(),
            _ => 0,
        }
    }

    /// True when the sequence is known to be constant from `prefix_len` on.
    pub fn tail_known(&self) -> bool {
        !matches!(self.rule, Rule::Table { tail: None, .. })
    }

    /// The constant imaginary part, if the sequence has one.
    pub fn kappa(&self) -> Option<f64> {
        self.kappa
    }

    /// The constant imaginary part, or an error for sequences violating the
    /// constant-imaginary-part assumption.
    pub fn require_kappa(&self) -> Result<f64> {
        self.kappa.ok_or_else(|| {
            let expected = self.eta(0).im;
            let site = (0..self.prefix_len() + 1)
                .find(|&j| (self.eta(j).im - expected).abs() > ASSUMPTION_TOL)
                .unwrap_or(0);
            Error::NonConstantImaginary {
                site,
                found: self.eta(site).im,
                expected,
            }
        })
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        match &self.rule {
            Rule::Constant(z) => {
                writeln!(w, "verblunsky constant")?;
                writeln!(w, "{}", format::complex(*z))?;
            }
            Rule::Ae { params, k, .. } => {
                writeln!(w, "verblunsky ae")?;
                writeln!(w, "alpha {}", format::real(params.alpha()))?;
                writeln!(w, "beta {}", format::real(params.beta()))?;
                writeln!(w, "k {}", format::real(*k))?;
            }
            Rule::Table { table, tail } => {
                match tail {
                    Some(t) => {
                        writeln!(w, "verblunsky table")?;
                        writeln!(w, "tail {}", format::complex(*t))?;
                    }
                    None => writeln!(w, "verblunsky explicit")?,
                }
                for (j, z) in table.iter().enumerate() {
                    writeln!(w, "{},{},{}", j, format::real(z.re), format::real(z.im))?;
                }
            }
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r
            .lines()
            .map(|l| l.map(|s| s.trim().to_string()))
            .filter(|l| !matches!(l, Ok(s) if s.is_empty() || s.starts_with('#')));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty Verblunsky file".into()))??;
        let flavor = header
            .strip_prefix("verblunsky")
            .map(str::trim)
            .ok_or_else(|| Error::Parse(format!("bad Verblunsky header {header:?}")))?;
        let rest: Vec<String> = lines.collect::<std::io::Result<_>>()?;
        match flavor {
            "constant" => match rest.as_slice() {
                [z] => Self::constant(format::parse_complex(z)?),
                _ => Err(Error::Parse("constant flavor takes exactly one value".into())),
            },
            "ae" => {
                let mut alpha = None;
                let mut beta = None;
                let mut k = None;
                for line in &rest {
                    let (key, val) = line
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| Error::Parse(format!("bad ae line {line:?}")))?;
                    let v = format::parse_real(val)?;
                    match key {
                        "alpha" => alpha = Some(v),
                        "beta" => beta = Some(v),
                        "k" => k = Some(v),
                        _ => return Err(Error::Parse(format!("unknown ae key {key:?}"))),
                    }
                }
                match (alpha, beta, k) {
                    (Some(a), Some(b), Some(k)) => Ok(Self::ae_fourier(AEParams::new(a, b), k)),
                    _ => Err(Error::Parse("ae flavor needs alpha, beta and k".into())),
                }
            }
            "table" | "explicit" => {
                let mut tail = None;
                let mut table = Vec::new();
                for line in &rest {
                    if let Some(t) = line.strip_prefix("tail") {
                        tail = Some(format::parse_complex(t)?);
                        continue;
                    }
                    let cols: Vec<&str> = line.split(',').map(str::trim).collect();
                    let [j, re, im] = cols.as_slice() else {
                        return Err(Error::Parse(format!("expected j,re,im got {line:?}")));
                    };
                    let j: usize = j
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad site index {j:?}")))?;
                    if j != table.len() {
                        return Err(Error::Parse(format!(
                            "table rows must be consecutive from 0, got {j} at row {}",
                            table.len()
                        )));
                    }
                    table.push(Complex64::new(format::parse_real(re)?, format::parse_real(im)?));
                }
                match (flavor, tail) {
                    ("table", Some(t)) => Self::with_tail(table, t),
                    ("table", None) => Err(Error::Parse("table flavor needs a tail line".into())),
                    (_, Some(_)) => Err(Error::Parse("explicit flavor takes no tail".into())),
                    (_, None) => Self::explicit(table),
                }
            }
            other => Err(Error::Parse(format!("unknown Verblunsky flavor {other:?}"))),
        }
    }
}
