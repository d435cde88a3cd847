//! Closed-form point-spectrum eigenvectors and their certification.
//!
//! A positive recurrent chain yields the stationary-measure vector
//! `psi*(0;L) = 1`, `psi*(j;R) = psi*(j+1;L) = sqrt(p_0..p_j / q_0..q_j)`;
//! a transient chain yields the energy flow
//! `xi*(j;R) = xi*(j+1;L) = (-1)^{j+1} sqrt(q_0..q_j / p_0..p_j)`.
//! Eigenvalues are never taken from a formula: they are Rayleigh quotients,
//! checked against `sin(arg lambda) = -kappa` and the sign of
//! `cos(arg lambda)` (nonnegative for `psi*`, nonpositive for `xi*`).

use num_complex::Complex64;
use serde::Serialize;

use crate::birth_death::{classify, BDChain, RecurrenceClass, DEFAULT_CLASSIFY_TOL, DEFAULT_MAX_TERMS};
use crate::error::{Error, Result};
use crate::walk::{amplitude, step, Arc, ArcState, Evolution, VerblunskySeq};

pub const DEFAULT_TAIL_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_SITES: usize = 1_000_000;
/// Tolerance of the `sin(arg lambda) = -kappa` branch identity.
pub const BRANCH_TOL: f64 = 1e-8;
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    StationaryMeasure,
    EnergyFlow,
}

#[derive(Clone, Debug)]
pub struct CertifiedEigenpair {
    pub vector: ArcState,
    pub eigenvalue: Complex64,
    pub residual: f64,
    pub source: Source,
}

impl CertifiedEigenpair {
    pub fn norm_sq(&self) -> f64 {
        self.vector.norm_sqr()
    }

    pub fn report(&self) -> EigenpairReport {
        EigenpairReport {
            source: self.source,
            eigenvalue: ComplexReport {
                re: self.eigenvalue.re,
                im: self.eigenvalue.im,
            },
            norm_sq: self.norm_sq(),
            residual: self.residual,
            support_size: self.vector.iter().count(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenpairReport {
    pub source: Source,
    pub eigenvalue: ComplexReport,
    pub norm_sq: f64,
    pub residual: f64,
    pub support_size: usize,
}

/// `(<psi, U psi> / <psi, psi>, ||U psi - lambda psi|| / ||psi||)`.
pub fn rayleigh_certify(state: &ArcState, seq: &VerblunskySeq) -> Result<(Complex64, f64)> {
    let n2 = state.norm_sqr();
    if n2 == 0.0 {
        return Err(Error::ZeroState);
    }
    let image = step(state, seq);
    let lambda = state.inner(&image) / n2;
    let residual = image.minus_scaled(lambda, state).norm() / n2.sqrt();
    Ok((lambda, residual))
}

/// Truncation of a geometric-tailed vector: stop once the discarded
/// `l^2` norm, bounded in closed form, drops below `tail_tol`.
///
/// `log_step(j)` is `ln` of the squared ratio between the pair values at
/// `j` and `j - 1`; `sign(j)` the sign of the pair value at `j`.
fn build_pairs(
    chain: &BDChain,
    tail_tol: f64,
    max_sites: usize,
    log_step: impl Fn(usize) -> f64,
    sign: impl Fn(usize) -> f64,
    tail_ratio: f64,
) -> Result<ArcState> {
    let mut state = ArcState::delta(Arc::SELF_LOOP);
    let mut log_sq = 0.0;
    let tail_factor = 2.0 * tail_ratio / (1.0 - tail_ratio);
    for j in 0.. {
        if j >= max_sites {
            return Err(Error::ResourceCap {
                what: "eigenvector truncation (sites)",
                needed: j + 1,
                cap: max_sites,
            });
        }
        log_sq += log_step(j);
        let v = sign(j) * (0.5 * log_sq).exp();
        state.set(Arc::right(j), Complex64::new(v, 0.0));
        state.set(Arc::left(j + 1), Complex64::new(v, 0.0));
        if j + 1 >= chain.prefix_len() {
            // pairs beyond j shrink by tail_ratio each
            let tail_norm = (log_sq.exp() * tail_factor).sqrt();
            if tail_norm < tail_tol {
                break;
            }
        }
    }
    Ok(state)
}

fn check_branch(lambda: Complex64, kappa: f64, source: Source) -> Result<()> {
    let theta = lambda.arg();
    let fail = |reason: String| Error::BranchMismatch {
        found: crate::format::complex(lambda),
        reason,
    };
    if (theta.sin() + kappa).abs() > BRANCH_TOL {
        return Err(fail(format!("sin(arg) = {} but -kappa = {}", theta.sin(), -kappa)));
    }
    let c = theta.cos();
    match source {
        Source::StationaryMeasure if c < -BRANCH_TOL => Err(fail(format!("cos(arg) = {c} < 0"))),
        Source::EnergyFlow if c > BRANCH_TOL => Err(fail(format!("cos(arg) = {c} > 0"))),
        _ => Ok(()),
    }
}

fn require_tail(chain: &BDChain, expected: &'static str, want: fn(&RecurrenceClass) -> bool) -> Result<f64> {
    let class = classify(chain, DEFAULT_MAX_TERMS, DEFAULT_CLASSIFY_TOL);
    if !want(&class) {
        return Err(Error::WrongClass {
            expected,
            found: class.tag().as_str().to_string(),
        });
    }
    Ok(chain.tail_p().expect("certified classes have a known tail"))
}

fn certify(vector: ArcState, seq: &VerblunskySeq, source: Source) -> Result<CertifiedEigenpair> {
    let kappa = seq.require_kappa()?;
    let (eigenvalue, residual) = rayleigh_certify(&vector, seq)?;
    check_branch(eigenvalue, kappa, source)?;
    Ok(CertifiedEigenpair {
        vector,
        eigenvalue,
        residual,
        source,
    })
}

pub fn psi_star(chain: &BDChain, seq: &VerblunskySeq, tail_tol: f64) -> Result<CertifiedEigenpair> {
    psi_star_capped(chain, seq, tail_tol, DEFAULT_MAX_SITES)
}

pub fn psi_star_capped(
    chain: &BDChain,
    seq: &VerblunskySeq,
    tail_tol: f64,
    max_sites: usize,
) -> Result<CertifiedEigenpair> {
    let p = require_tail(chain, "positive recurrent", |c| {
        matches!(c, RecurrenceClass::PositiveRecurrent { .. })
    })?;
    let vector = build_pairs(
        chain,
        tail_tol,
        max_sites,
        |j| chain.p(j).ln() - chain.q(j).ln(),
        |_| 1.0,
        p / (1.0 - p),
    )?;
    certify(vector, seq, Source::StationaryMeasure)
}

pub fn xi_star(chain: &BDChain, seq: &VerblunskySeq, tail_tol: f64) -> Result<CertifiedEigenpair> {
    xi_star_capped(chain, seq, tail_tol, DEFAULT_MAX_SITES)
}

pub fn xi_star_capped(
    chain: &BDChain,
    seq: &VerblunskySeq,
    tail_tol: f64,
    max_sites: usize,
) -> Result<CertifiedEigenpair> {
    let p = require_tail(chain, "transient", |c| matches!(c, RecurrenceClass::Transient { .. }))?;
    let vector = build_pairs(
        chain,
        tail_tol,
        max_sites,
        |j| chain.q(j).ln() - chain.p(j).ln(),
        |j| if j % 2 == 0 { -1.0 } else { 1.0 },
        (1.0 - p) / p,
    )?;
    certify(vector, seq, Source::EnergyFlow)
}

/// Whichever closed-form eigenpair the chain's class provides.
pub fn point_spectrum(chain: &BDChain, seq: &VerblunskySeq, tail_tol: f64, max_sites: usize) -> Result<Option<CertifiedEigenpair>> {
    match classify(chain, DEFAULT_MAX_TERMS, DEFAULT_CLASSIFY_TOL) {
        RecurrenceClass::PositiveRecurrent { .. } => psi_star_capped(chain, seq, tail_tol, max_sites).map(Some),
        RecurrenceClass::Transient { .. } => xi_star_capped(chain, seq, tail_tol, max_sites).map(Some),
        _ => Ok(None),
    }
}

/// Time-averaged return probability to `arc` against the eigenvector
/// overlap bound `sum |<delta_a, psi_hat>|^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationBound {
    pub time_avg: f64,
    pub bound: f64,
}

pub fn localization_bound(
    seq: &VerblunskySeq,
    pairs: &[CertifiedEigenpair],
    arc: Arc,
    horizon: usize,
) -> Result<LocalizationBound> {
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (a, b) = (&pairs[i].vector, &pairs[j].vector);
            let overlap = a.inner(b).norm() / (a.norm() * b.norm());
            if overlap > ORTHOGONALITY_TOL {
                return Err(Error::NotOrthogonal(i, j, overlap));
            }
        }
    }
    let bound = pairs
        .iter()
        .map(|e| (e.vector.get(arc).norm_sqr() / e.norm_sq()).powi(2))
        .fold(0.0, |a, b| a + b);
    let index = arc.index();
    let total: f64 = Evolution::new(ArcState::delta(arc), seq)
        .take(horizon)
        .map(|s| amplitude(&s, index).norm_sqr())
        .sum();
    let time_avg = if horizon == 0 { 0.0 } else { total / horizon as f64 };
    Ok(LocalizationBound { time_avg, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::Coin;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Walk with `kappa` whose chain has right-move probability `p`.
    fn walk(p: f64, kappa: f64) -> (BDChain, VerblunskySeq) {
        let re = (1.0 - 2.0 * p) * (1.0 - kappa * kappa).sqrt();
        let seq = VerblunskySeq::constant(c(re, kappa)).unwrap();
        (BDChain::from_walk(&seq).unwrap(), seq)
    }

    #[test]
    fn psi_star_examples() {
        let (chain, seq) = walk(0.3, 0.0);
        let e = psi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        assert!((e.norm_sq() - 2.5).abs() < 1e-9);
        assert!(e.eigenvalue.arg().sin().abs() < 1e-8);
        assert!(e.residual <= 1e-10, "{}", e.residual);
        assert!((e.vector.get(Arc::right(0)).re - (3.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert!((e.vector.get(Arc::right(0)).re - 0.654_653_670_707_977_1).abs() < 1e-12);
        assert!(e.vector.iter().all(|(_, z)| z.re > 0.0 && z.im == 0.0));
        assert!(matches!(xi_star(&chain, &seq, 1e-14), Err(Error::WrongClass { .. })));
    }

    #[test]
    fn xi_star_examples() {
        let (chain, seq) = walk(0.7, 0.0);
        let e = xi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        assert!((e.norm_sq() - 2.5).abs() < 1e-9);
        assert!((e.vector.get(Arc::right(0)).re + 0.654_653_670_707_977_1).abs() < 1e-12);
        assert!(e.residual <= 1e-10);
        assert_eq!(e.source, Source::EnergyFlow);
        // Kirchhoff: sqrt(q_j) xi(j;L) + sqrt(p_j) xi(j;R) = 0
        let last = e.vector.highest_site().unwrap();
        for j in 0..last {
            let k = chain.q(j).sqrt() * e.vector.get(Arc::left(j)) + chain.p(j).sqrt() * e.vector.get(Arc::right(j));
            assert!(k.norm() <= 1e-12, "site {j}");
        }
        // alternating signs
        for j in 0..last {
            let v = e.vector.get(Arc::right(j)).re;
            assert_eq!(v < 0.0, j % 2 == 0);
        }
        assert!(matches!(psi_star(&chain, &seq, 1e-14), Err(Error::WrongClass { .. })));
    }

    #[test]
    fn rayleigh_examples() {
        // U delta_(0;L) = delta_(0;L) when eta_0 = -1 (pure reflection, conj(eta) = -1)
        let seq = VerblunskySeq::with_tail(vec![c(-1.0, 0.0)], c(0.3, 0.0)).unwrap();
        let (lambda, res) = rayleigh_certify(&ArcState::delta(Arc::SELF_LOOP), &seq).unwrap();
        assert!((lambda - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(res < 1e-14);
        assert!(matches!(rayleigh_certify(&ArcState::zero(), &seq), Err(Error::ZeroState)));
        let s = ArcState::from_amplitudes(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0)]);
        let (_, res) = rayleigh_certify(&s, &VerblunskySeq::constant(c(0.2, 0.1)).unwrap()).unwrap();
        assert!(res >= 0.0);
    }

    #[test]
    fn toy_three_site_eigenvector() {
        // reflecting coin at site 2 closes the window; any eigenvector of the
        // 5x5 block is an exact eigenvector of U
        let seq = VerblunskySeq::explicit(vec![c(0.3, 0.2), c(-0.1, 0.2), c(1.0, 0.0)]).unwrap();
        let t = crate::walk::truncated_matrix(&seq, 2);
        assert!(t.leaky_columns.is_empty());
        let ev = crate::spectrum::eigenvalues(&t.matrix).unwrap();
        let lambda = ev[0];
        // null vector of (M - lambda) by inverse iteration
        let shifted = &t.matrix - nalgebra::DMatrix::identity(5, 5) * (lambda + c(1e-9, 0.0));
        let lu = shifted.lu();
        let mut v = nalgebra::DVector::from_element(5, c(1.0, 0.0));
        for _ in 0..3 {
            v = lu.solve(&v).unwrap();
            v /= c(v.norm(), 0.0);
        }
        let state = ArcState::from_amplitudes(v.iter().copied().collect());
        let (mu, res) = rayleigh_certify(&state, &seq).unwrap();
        assert!((mu - lambda).norm() < 1e-12);
        assert!(res < 1e-14, "{res}");
    }

    #[test]
    fn complex_eta_branches() {
        for kappa in [0.25, -0.25, 0.5, -0.5] {
            for p in [0.2, 0.8] {
                let (chain, seq) = walk(p, kappa);
                let e = point_spectrum(&chain, &seq, DEFAULT_TAIL_TOL, DEFAULT_MAX_SITES).unwrap().unwrap();
                assert!((e.eigenvalue.norm() - 1.0).abs() < 1e-12);
                assert!((e.eigenvalue.arg().sin() + kappa).abs() < 1e-8);
                assert!(e.residual <= 1e-10);
            }
        }
    }

    #[test]
    fn non_constant_chain_eigenvectors() {
        let kappa = 0.3;
        let table = vec![c(0.5, kappa), c(-0.2, kappa), c(0.7, kappa), c(0.1, kappa)];
        let seq = VerblunskySeq::with_tail(table.clone(), c(0.4, kappa)).unwrap();
        let chain = BDChain::from_walk(&seq).unwrap();
        let e = psi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        assert!(e.residual <= 1e-10, "{}", e.residual);
        let seq = VerblunskySeq::with_tail(table, c(-0.4, kappa)).unwrap();
        let chain = BDChain::from_walk(&seq).unwrap();
        let e = xi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        assert!(e.residual <= 1e-10, "{}", e.residual);
    }

    #[test]
    fn eigenvector_pairs_with_coin_eigenvector() {
        // psi*(j;R), psi*(j;L) is proportional to [sqrt p_j, sqrt q_j]
        let (chain, seq) = walk(0.35, 0.25);
        let e = psi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        for j in 0..20 {
            let r = e.vector.get(Arc::right(j)).re;
            let l = e.vector.get(Arc::left(j)).re;
            assert!((r / l - (chain.p(j) / chain.q(j)).sqrt()).abs() < 1e-12);
        }
        let coin = Coin::from_eta(seq.eta(0));
        assert!(coin.unitarity_defect() < 1e-12);
    }

    #[test]
    fn resource_cap_on_long_vectors() {
        let (chain, seq) = walk(0.499, 0.0);
        assert!(matches!(
            psi_star_capped(&chain, &seq, 1e-14, 100),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn localization_examples() {
        let (chain, seq) = walk(0.3, 0.0);
        let e = psi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        let b = localization_bound(&seq, &[e], Arc::SELF_LOOP, 50).unwrap();
        assert!((b.bound - 0.16).abs() < 1e-12);

        let (_, seq) = walk(0.5, 0.0);
        let b = localization_bound(&seq, &[], Arc::SELF_LOOP, 50).unwrap();
        assert_eq!(b.bound, 0.0);

        let (chain, seq) = walk(0.7, 0.0);
        let e = xi_star(&chain, &seq, DEFAULT_TAIL_TOL).unwrap();
        let b = localization_bound(&seq, std::slice::from_ref(&e), Arc::SELF_LOOP, 10).unwrap();
        assert!((b.bound - 0.16).abs() < 1e-12);
        assert!(matches!(
            localization_bound(&seq, &[e.clone(), e], Arc::SELF_LOOP, 10),
            Err(Error::NotOrthogonal(0, 1, _))
        ));
    }
}
