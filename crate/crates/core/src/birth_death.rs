//! The birth-death chain underlying a half-line walk and its recurrence
//! class.
//!
//! From site `j >= 1` the chain moves right with probability `p_j` and left
//! with `q_j = 1 - p_j`; at the origin it moves right with `p_0` and stays
//! with `q_0`. The class is decided by the two series
//!
//! ```text
//! c_R = sum_{j>=0} p_0..p_{j-1} / (q_1..q_j)      (finite: positive recurrent)
//! c_T = sum_{j>=1} q_0..q_j / (p_0..p_j)          (finite: transient)
//! ```
//!
//! and null recurrence when both diverge. Products are accumulated as sums
//! of logarithms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::{coin_eigen, VerblunskySeq};

pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
/// A tail with `|p - q|` below this is treated as symmetric.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct BDChain {
    prefix: Vec<f64>,
    tail: Option<f64>,
}

fn check_p(site: usize, p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ProbabilityOutOfRange { site, value: p });
    }
    Ok(())
}

impl BDChain {
    pub fn constant(p: f64) -> Result<Self> {
        Self::with_tail(Vec::new(), p)
    }

    pub fn with_tail(prefix: Vec<f64>, tail: f64) -> Result<Self> {
        for (j, p) in prefix.iter().enumerate() {
            check_p(j, *p)?;
        }
        check_p(prefix.len(), tail)?;
        Ok(Self {
            prefix,
            tail: Some(tail),
        })
    }

    /// A finite table whose continuation is unknown. Past the table the last
    /// value is reused for evaluation, but no classification is certified.
    pub fn explicit(table: Vec<f64>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::Parse("empty probability table".into()));
        }
        for (j, p) in table.iter().enumerate() {
            check_p(j, *p)?;
        }
        Ok(Self {
            prefix: table,
            tail: None,
        })
    }

    /// The chain whose right-move probabilities come from the coin
    /// eigenvectors of the walk.
    pub fn from_walk(seq: &VerblunskySeq) -> Result<Self> {
        let kappa = seq.require_kappa()?;
        let p_at = |j: usize| -> Result<f64> {
            let eta = seq.eta(j);
            if eta.norm() >= 1.0 {
                return Err(Error::DegenerateCoin(format!("|eta_{j}| = 1 disconnects the line")));
            }
            let p = coin_eigen(eta, kappa)?.p;
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::DegenerateCoin(format!("site {j} gives p = {p}")));
            }
            Ok(p)
        };
        let prefix = (0..seq.prefix_len()).map(p_at).collect::<Result<Vec<_>>>()?;
        if seq.tail_known() {
            let tail = p_at(seq.prefix_len())?;
            Self::with_tail(prefix, tail)
        } else {
            Self::explicit(prefix)
        }
    }

    pub fn p(&self, j: usize) -> f64 {
        match self.prefix.get(j) {
            Some(p) => *p,
            None => self
                .tail
                .unwrap_or_else(|| *self.prefix.last().expect("nonempty table")),
        }
    }

    pub fn q(&self, j: usize) -> f64 {
        1.0 - self.p(j)
    }

    pub fn tail_known(&self) -> bool {
        self.tail.is_some()
    }

    pub fn tail_p(&self) -> Option<f64> {
        self.tail
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    /// `ln(p_j / q_{j+1})`, the log-ratio of consecutive `c_R` terms.
    fn log_r_step(&self, j: usize) -> f64 {
        self.p(j).ln() - self.q(j + 1).ln()
    }

    /// `ln(q_j / p_j)`, the log-ratio of consecutive `c_T` terms (with
    /// `b_0 = q_0 / p_0`).
    fn log_t_step(&self, j: usize) -> f64 {
        self.q(j).ln() - self.p(j).ln()
    }
}

/// Recurrence class with the certified series values.
#[derive(Clone, Debug, PartialEq)]
pub enum RecurrenceClass {
    PositiveRecurrent { c_r: f64 },
    NullRecurrent,
    Transient { c_t: f64 },
    Undetermined {
        partial_c_r: f64,
        partial_c_t: f64,
        terms_used: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    PositiveRecurrent,
    NullRecurrent,
    Transient,
    Undetermined,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::PositiveRecurrent => "positive_recurrent",
            ClassTag::NullRecurrent => "null_recurrent",
            ClassTag::Transient => "transient",
            ClassTag::Undetermined => "undetermined",
        }
    }
}

impl RecurrenceClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            RecurrenceClass::PositiveRecurrent { .. } => ClassTag::PositiveRecurrent,
            RecurrenceClass::NullRecurrent => ClassTag::NullRecurrent,
            RecurrenceClass::Transient { .. } => ClassTag::Transient,
            RecurrenceClass::Undetermined { .. } => ClassTag::Undetermined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialSums {
    #[serde(rename = "c_R")]
    pub c_r: f64,
    #[serde(rename = "c_T")]
    pub c_t: f64,
}

/// JSON shape of a classification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub class: ClassTag,
    #[serde(rename = "c_R", skip_serializing_if = "Option::is_none")]
    pub c_r: Option<f64>,
    #[serde(rename = "c_T", skip_serializing_if = "Option::is_none")]
    pub c_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_sums: Option<PartialSums>,
    pub terms_used: usize,
}

impl ClassificationReport {
    pub fn new(class: &RecurrenceClass, terms_used: usize) -> Self {
        let mut r = ClassificationReport {
            class: class.tag(),
            c_r: None,
            c_t: None,
            partial_sums: None,
            terms_used,
        };
        match class {
            RecurrenceClass::PositiveRecurrent { c_r } => r.c_r = Some(*c_r),
            RecurrenceClass::Transient { c_t } => r.c_t = Some(*c_t),
            RecurrenceClass::NullRecurrent => {}
            RecurrenceClass::Undetermined {
                partial_c_r,
                partial_c_t,
                terms_used,
            } => {
                r.partial_sums = Some(PartialSums {
                    c_r: *partial_c_r,
                    c_t: *partial_c_t,
                });
                r.terms_used = *terms_used;
            }
        }
        r
    }
}

fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}

/// Logs of the `c_R` terms `a_0..a_{n-1}`.
fn c_r_logs(chain: &BDChain, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    for j in 0..n {
        out.push(acc);
        acc += chain.log_r_step(j);
    }
    out
}

/// Logs of the `c_T` terms `b_1..b_{n}`.
fn c_t_logs(chain: &BDChain, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = chain.log_t_step(0);
    for j in 1..=n {
        acc += chain.log_t_step(j);
        out.push(acc);
    }
    out
}

/// The number of explicit terms the closed-form evaluation consumes.
pub fn terms_needed(chain: &BDChain) -> usize {
    chain.prefix_len() + 1
}

pub fn classify(chain: &BDChain, max_terms: usize, tol: f64) -> RecurrenceClass {
    assert!(max_terms >= 1, "max_terms must be at least 1");
    let n = chain.prefix_len();
    let undetermined = |terms: usize| {
        let terms = terms.max(1);
        RecurrenceClass::Undetermined {
            partial_c_r: log_sum_exp(&c_r_logs(chain, terms)).exp(),
            partial_c_t: log_sum_exp(&c_t_logs(chain, terms)).exp(),
            terms_used: terms,
        }
    };
    let Some(p) = chain.tail_p() else {
        return undetermined(max_terms.min(n));
    };
    if n + 1 > max_terms {
        return undetermined(max_terms);
    }
    let q = 1.0 - p;
    if (p - q).abs() <= tol {
        return RecurrenceClass::NullRecurrent;
    }
    if p < q {
        // a_{n+i} = a_n (p/q)^i
        let mut logs = c_r_logs(chain, n + 1);
        let last = logs.pop().expect("n + 1 >= 1 terms");
        logs.push(last - (1.0 - p / q).ln());
        RecurrenceClass::PositiveRecurrent {
            c_r: log_sum_exp(&logs).exp(),
        }
    } else {
        // b_{m+i} = b_m (q/p)^i from m = max(1, n - 1)
        let m = n.saturating_sub(1).max(1);
        let mut logs = c_t_logs(chain, m);
        let last = logs.pop().expect("m >= 1 terms");
        logs.push(last - (1.0 - q / p).ln());
        RecurrenceClass::Transient {
            c_t: log_sum_exp(&logs).exp(),
        }
    }
}

/// `m_V(j) / m_V(0) = sqrt(p_0..p_{j-1} / (q_1..q_j))`.
pub fn reversible_measure(chain: &BDChain, j: usize) -> f64 {
    (0.5 * log_reversible_measure_sq(chain, j)).exp()
}

/// `ln(m_V(j)^2)` with `m_V(0) = 1`.
pub fn log_reversible_measure_sq(chain: &BDChain, j: usize) -> f64 {
    (0..j).map(|i| chain.log_r_step(i)).sum()
}

/// Values of the reversible measure normalized to `m_V(0) = 1`.
#[derive(Clone, Debug)]
pub struct ReversibleMeasure<'a> {
    chain: &'a BDChain,
}

impl<'a> ReversibleMeasure<'a> {
    pub fn new(chain: &'a BDChain) -> Self {
        Self { chain }
    }

    /// `m_V(0), m_V(1), ...` computed incrementally.
    pub fn values(&self) -> impl Iterator<Item = f64> + 'a {
        let chain = self.chain;
        (0..).scan(0.0f64, move |acc, j: usize| {
            let v = (0.5 * *acc).exp();
            *acc += chain.log_r_step(j);
            Some(v)
        })
    }
}

/// The stationary distribution `pi(j) = m_V(j)^2 / sum_i m_V(i)^2`.
#[derive(Clone, Debug)]
pub struct Stationary {
    chain: BDChain,
    log_total: f64,
}

impl Stationary {
    pub fn prob(&self, j: usize) -> f64 {
        (log_reversible_measure_sq(&self.chain, j) - self.log_total).exp()
    }

    /// `pi(0), ..., pi(n-1)`.
    pub fn probs(&self, n: usize) -> Vec<f64> {
        c_r_logs(&self.chain, n)
            .into_iter()
            .map(|l| (l - self.log_total).exp())
            .collect()
    }

    /// The normalizer `sum_j m_V(j)^2`, equal to `c_R`.
    pub fn total_mass(&self) -> f64 {
        self.log_total.exp()
    }
}

pub fn stationary(chain: &BDChain) -> Result<Stationary> {
    match classify(chain, DEFAULT_MAX_TERMS, DEFAULT_CLASSIFY_TOL) {
        RecurrenceClass::PositiveRecurrent { c_r } => Ok(Stationary {
            chain: chain.clone(),
            log_total: c_r.ln(),
        }),
        other => Err(Error::WrongClass {
            expected: "positive recurrent",
            found: other.tag().as_str().to_string(),
        }),
    }
}
