use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Verblunsky parameter {value} at site {site} lies outside the closed unit disc")]
    OutsideDisc { site: usize, value: String },

    #[error("Im(eta_j) is not constant: site {site} has {found}, expected {expected}")]
    NonConstantImaginary {
        site: usize,
        found: f64,
        expected: f64,
    },

    #[error("degenerate coin: {0}")]
    DegenerateCoin(String),

    #[error("probability p_{site} = {value} is not in the open interval (0, 1)")]
    ProbabilityOutOfRange { site: usize, value: f64 },

    #[error("operation requires a {expected} chain, found {found}")]
    WrongClass {
        expected: &'static str,
        found: String,
    },

    #[error("zero state has no Rayleigh quotient")]
    ZeroState,

    #[error("eigenpairs {0} and {1} are not orthogonal (overlap {2:e})")]
    NotOrthogonal(usize, usize, f64),

    #[error("eigenvalue {found} fails the branch check: {reason}")]
    BranchMismatch { found: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("diagonalization failed to converge")]
    NoConvergence,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
