use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A computed object violates a structural identity it must satisfy.
    /// This is a bug in the crate, not bad input.
    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),

    #[error("matrix is not positive definite (pivot {index} = {pivot:e})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid delta sequence: {0}")]
    InvalidDelta(String),

    #[error("ordering violated: {0}")]
    Ordering(String),

    /// `Λ_i^{1/(l-1)} > n-2` fails for the eigenvalue at position `index`
    /// (1-based).
    #[error("domain violation at index {index}: Λ^(1/(l-1)) = {root:.6} must exceed n-2 = {threshold}")]
    DomainViolation {
        index: usize,
        root: f64,
        threshold: u32,
    },

    #[error("infeasible spectrum: {0}")]
    InfeasibleSpectrum(String),

    #[error("bound is unbounded: {0}")]
    Unbounded(String),

    #[error("spectrum provenance refused: {0}")]
    Provenance(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
