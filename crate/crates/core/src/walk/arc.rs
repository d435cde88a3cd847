use std::fmt;
use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format;

/// Which neighbour an arc arrives from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Arrives from the left neighbour; at site 0 this is the self-loop.
    L,
    /// Arrives from the right neighbour.
    R,
}

/// An arc of the half line, named by its terminus.
///
/// `(j;R)` runs from `j+1` to `j`, `(j;L)` runs from `j-1` to `j` for
/// `j >= 1`, and `(0;L)` is the self-loop at the origin.
///
/// Arcs are laid out linearly as `(0;L) = 0`, `(j;R) = 2j+1`,
/// `(j;L) = 2j`, so the two arcs of the edge `{j, j+1}` occupy the adjacent
/// slots `2j+1, 2j+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub site: usize,
    pub direction: Direction,
}

impl Arc {
    pub const SELF_LOOP: Arc = Arc {
        site: 0,
        direction: Direction::L,
    };

    pub fn left(site: usize) -> Self {
        Arc {
            site,
            direction: Direction::L,
        }
    }

    pub fn right(site: usize) -> Self {
        Arc {
            site,
            direction: Direction::R,
        }
    }

    pub fn index(self) -> usize {
        match self.direction {
            Direction::L => 2 * self.site,
            Direction::R => 2 * self.site + 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i % 2 == 1 {
            Arc::right((i - 1) / 2)
        } else {
            Arc::left(i / 2)
        }
    }

    pub fn terminus(self) -> usize {
        self.site
    }

    pub fn origin(self) -> usize {
        match self.direction {
            Direction::R => self.site + 1,
            Direction::L => self.site.saturating_sub(1),
        }
    }

    /// The inverse arc; the self-loop is its own inverse.
    pub fn reversed(self) -> Self {
        match (self.direction, self.site) {
            (Direction::R, j) => Arc::left(j + 1),
            (Direction::L, 0) => Arc::SELF_LOOP,
            (Direction::L, j) => Arc::right(j - 1),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            Direction::L => 'L',
            Direction::R => 'R',
        };
        write!(f, "({};{})", self.site, d)
    }
}

/// Finitely supported amplitudes on half-line arcs.
///
/// Storage is the linear arc layout; everything past the stored prefix is
/// zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArcState {
    amps: Vec<Complex64>,
}

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl ArcState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(arc: Arc) -> Self {
        let mut s = Self::zero();
        s.set(arc, Complex64::new(1.0, 0.0));
        s
    }

    /// Builds a state from amplitudes in linear arc order.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut Vec<Complex64> {
        &mut self.amps
    }

    pub fn get(&self, arc: Arc) -> Complex64 {
        self.amps.get(arc.index()).copied().unwrap_or(ZERO)
    }

    pub fn set(&mut self, arc: Arc, value: Complex64) {
        let i = arc.index();
        if i >= self.amps.len() {
            if value == ZERO {
                return;
            }
            self.amps.resize(i + 1, ZERO);
        }
        self.amps[i] = value;
    }

    /// Number of stored arc slots.
    pub fn stored_len(&self) -> usize {
        self.amps.len()
    }

    /// Largest site touched by the stored window, or `None` for an empty
    /// window.
    pub fn window_sites(&self) -> Option<usize> {
        self.amps.len().checked_sub(1).map(|i| Arc::from_index(i).site)
    }

    /// Largest site carrying a nonzero amplitude.
    pub fn highest_site(&self) -> Option<usize> {
        self.amps
            .iter()
            .rposition(|z| *z != ZERO)
            .map(|i| Arc::from_index(i).site)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &ArcState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scaled(&self, c: Complex64) -> ArcState {
        ArcState {
            amps: self.amps.iter().map(|z| z * c).collect(),
        }
    }

    /// `self - c * other`.
    pub fn minus_scaled(&self, c: Complex64, other: &ArcState) -> ArcState {
        let n = self.amps.len().max(other.amps.len());
        let amps = (0..n)
            .map(|i| {
                let a = self.amps.get(i).copied().unwrap_or(ZERO);
                let b = other.amps.get(i).copied().unwrap_or(ZERO);
                a - c * b
            })
            .collect();
        ArcState { amps }
    }

    /// Largest amplitude-wise difference.
    pub fn max_abs_diff(&self, other: &ArcState) -> f64 {
        self.minus_scaled(Complex64::new(1.0, 0.0), other)
            .amps
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Nonzero entries in arc order.
    pub fn iter(&self) -> impl Iterator<Item = (Arc, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(i, z)| (Arc::from_index(i), *z))
    }

    /// Probability of finding the walker at each site of the stored window.
    pub fn site_probabilities(&self) -> Vec<f64> {
        let sites = self.window_sites().map_or(0, |s| s + 1);
        let mut out = vec![0.0; sites];
        for (i, z) in self.amps.iter().enumerate() {
            out[Arc::from_index(i).site] += z.norm_sqr();
        }
        out
    }

    pub(crate) fn pad_to(&mut self, len: usize) {
        if self.amps.len() < len {
            self.amps.resize(len, ZERO);
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# qwalk arc-state v1")?;
        writeln!(w, "site,direction,re,im")?;
        for (arc, z) in self.iter() {
            let d = match arc.direction {
                Direction::L => "L",
                Direction::R => "R",
            };
            writeln!(w, "{},{},{},{}", arc.site, d, format::real(z.re), format::real(z.im))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut state = ArcState::zero();
        let mut header_seen = false;
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if !header_seen {
                if t.replace(' ', "") != "site,direction,re,im" {
                    return Err(Error::Parse(format!("arc-state header expected, got {t:?}")));
                }
                header_seen = true;
                continue;
            }
            let cols: Vec<&str> = t.split(',').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 columns", lineno + 1)));
            }
            let site: usize = cols[0]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad site {:?}", lineno + 1, cols[0])))?;
            let arc = match cols[1] {
                "L" => Arc::left(site),
                "R" => Arc::right(site),
                d => return Err(Error::Parse(format!("line {}: bad direction {d:?}", lineno + 1))),
            };
            let z = Complex64::new(format::parse_real(cols[2])?, format::parse_real(cols[3])?);
            state.set(arc, state.get(arc) + z);
        }
        if !header_seen {
            return Err(Error::Parse("empty arc-state file".into()));
        }
        Ok(state)
    }
}
