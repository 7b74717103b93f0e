use thiserror::Error;

/// Errors shared by every layer of the laboratory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact polynomial division left a nonzero remainder.
    #[error("polynomial division is not exact")]
    NonDivisible,
    /// A term, grid-point or enumeration budget was exhausted.
    #[error("size limit exceeded: {what} reached {count} (limit {limit})")]
    SizeLimit {
        what: &'static str,
        count: u64,
        limit: u64,
    },
    /// The per-case wall-clock deadline passed.
    #[error("deadline exceeded")]
    Timeout,
    /// The product has more linear factors than the target monomial has degree.
    #[error("factor product has degree {degree} but the target monomial only has degree {target}")]
    DegreeViolation { degree: usize, target: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no evaluation pipeline for {0}")]
    Unsupported(String),
    #[error("rational reconstruction failed: {0}")]
    ReconstructionFailed(String),
}

impl Error {
    pub fn bad(msg: impl Into<String>) -> Self {
        Error::BadParams(msg.into())
    }

    /// Resource errors (size limits, deadlines) mark a case as skipped rather than failed.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::Timeout)
    }

    /// Short machine-readable tag used in JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonDivisible => "non_divisible",
            Error::SizeLimit { .. } => "size_limit",
            Error::Timeout => "timeout",
            Error::DegreeViolation { .. } => "degree_violation",
            Error::BadParams(_) => "bad_params",
            Error::Unsupported(_) => "unsupported",
            Error::ReconstructionFailed(_) => "reconstruction_failed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
