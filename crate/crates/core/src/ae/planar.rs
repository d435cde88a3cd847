use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::params::{rotation, AEParams};
use crate::error::{Error, Result};
use crate::format;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    HalfPlane,
    /// `y` is taken mod the circumference.
    Cylinder(usize),
}

/// Finitely supported amplitudes on `{x >= 0} x Z`, two components per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarState {
    topology: Topology,
    amps: BTreeMap<(usize, i64), [Complex64; 2]>,
}

impl PlanarState {
    pub fn new(topology: Topology) -> Self {
        if let Topology::Cylinder(l) = topology {
            assert!(l > 0, "cylinder circumference must be positive");
        }
        PlanarState {
            topology,
            amps: BTreeMap::new(),
        }
    }

    pub fn delta(topology: Topology, x: usize, y: i64, component: usize) -> Self {
        let mut s = Self::new(topology);
        let mut v = [ZERO; 2];
        v[component] = Complex64::new(1.0, 0.0);
        s.set(x, y, v);
        s
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    fn wrap(&self, y: i64) -> i64 {
        match self.topology {
            Topology::HalfPlane => y,
            Topology::Cylinder(l) => y.rem_euclid(l as i64),
        }
    }

    pub fn get(&self, x: usize, y: i64) -> [Complex64; 2] {
        self.amps.get(&(x, self.wrap(y))).copied().unwrap_or([ZERO; 2])
    }

    pub fn set(&mut self, x: usize, y: i64, v: [Complex64; 2]) {
        let y = self.wrap(y);
        if v == [ZERO; 2] {
            self.amps.remove(&(x, y));
        } else {
            self.amps.insert((x, y), v);
        }
    }

    fn add(&mut self, x: usize, y: i64, c: usize, z: Complex64) {
        let y = self.wrap(y);
        self.amps.entry((x, y)).or_insert([ZERO; 2])[c] += z;
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, i64), [Complex64; 2])> + '_ {
        self.amps.iter().map(|(k, v)| (*k, *v))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|v| v[0].norm_sqr() + v[1].norm_sqr()).sum()
    }

    pub fn max_x(&self) -> Option<usize> {
        self.amps.keys().map(|k| k.0).max()
    }

    /// Probability at vertices with `x <= x_max`.
    pub fn mass_up_to(&self, x_max: usize) -> f64 {
        self.amps
            .iter()
            .filter(|(k, _)| k.0 <= x_max)
            .map(|(_, v)| v[0].norm_sqr() + v[1].norm_sqr())
            .sum()
    }

    /// Marginal probabilities `P(x)` for `x = 0..=max_x`.
    pub fn x_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.max_x().map_or(0, |m| m + 1)];
        for ((x, _), v) in &self.amps {
            out[*x] += v[0].norm_sqr() + v[1].norm_sqr();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &PlanarState) -> f64 {
        let mut d: f64 = 0.0;
        for &(x, y) in self.amps.keys().chain(other.amps.keys()) {
            let (a, b) = (self.get(x, y), other.get(x, y));
            d = d.max((a[0] - b[0]).norm()).max((a[1] - b[1]).norm());
        }
        d
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let topo = match self.topology {
            Topology::HalfPlane => "half-plane".to_string(),
            Topology::Cylinder(l) => format!("cylinder {l}"),
        };
        writeln!(w, "# qwalk planar-state v1 {topo}")?;
        writeln!(w, "x,y,re0,im0,re1,im1")?;
        for ((x, y), v) in &self.amps {
            writeln!(
                w,
                "{x},{y},{},{},{},{}",
                format::real(v[0].re),
                format::real(v[0].im),
                format::real(v[1].re),
                format::real(v[1].im)
            )?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let first = lines.next().ok_or_else(|| Error::Parse("empty planar-state file".into()))??;
        let topo = first
            .strip_prefix("# qwalk planar-state v1 ")
            .ok_or_else(|| Error::Parse(format!("bad planar-state header: {first}")))?;
        let topology = match topo.split_whitespace().collect::<Vec<_>>()[..] {
            ["half-plane"] => Topology::HalfPlane,
            ["cylinder", l] => {
                let l: usize = l.parse().map_err(|_| Error::Parse(format!("bad circumference {l}")))?;
                if l == 0 {
                    return Err(Error::Parse("cylinder circumference must be positive".into()));
                }
                Topology::Cylinder(l)
            }
            _ => return Err(Error::Parse(format!("unknown topology: {topo}"))),
        };
        let mut s = PlanarState::new(topology);
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("x,") {
                continue;
            }
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 6 {
                return Err(Error::Parse(format!("expected 6 fields: {line}")));
            }
            let x: usize = f[0].parse().map_err(|_| Error::Parse(format!("bad x: {}", f[0])))?;
            let y: i64 = f[1].parse().map_err(|_| Error::Parse(format!("bad y: {}", f[1])))?;
            let r: Vec<f64> = f[2..].iter().map(|t| format::parse_real(t)).collect::<Result<_>>()?;
            s.set(x, y, [Complex64::new(r[0], r[1]), Complex64::new(r[2], r[3])]);
        }
        Ok(s)
    }
}

/// One application of the planar walk.
///
/// Vertical scatter with `H_beta` (component 0 moves to `y - 1`, component 1
/// to `y + 1`), then horizontal scatter with `H_alpha` (component 0 moves to
/// `x - 1`, component 1 to `x + 1`). At `x = 0` component 0 cannot move left
/// and is fed into component 1 of the same vertex.
pub fn gamma_step(state: &PlanarState, params: AEParams) -> PlanarState {
    let hb = rotation(params.beta());
    let ha = rotation(params.alpha());
    let mut mid = PlanarState::new(state.topology);
    for ((x, y), v) in state.iter() {
        let g0 = hb[(0, 0)] * v[0] + hb[(0, 1)] * v[1];
        let g1 = hb[(1, 0)] * v[0] + hb[(1, 1)] * v[1];
        mid.add(x, y - 1, 0, g0);
        mid.add(x, y + 1, 1, g1);
    }
    let mut out = PlanarState::new(state.topology);
    for ((x, y), v) in mid.iter() {
        let g0 = ha[(0, 0)] * v[0] + ha[(0, 1)] * v[1];
        let g1 = ha[(1, 0)] * v[0] + ha[(1, 1)] * v[1];
        if x == 0 {
            out.add(0, y, 1, g0);
        } else {
            out.add(x - 1, y, 0, g0);
        }
        out.add(x + 1, y, 1, g1);
    }
    out.amps.retain(|_, v| *v != [ZERO; 2]);
    out
}
