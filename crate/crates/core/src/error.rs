use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input violates hypothesis: {0}")]
    HypothesisViolation(String),
    #[error("rational interpolation failed: {0}")]
    InterpolationFailure(String),
    #[error("no telescoper found within the search bounds")]
    NotFound,
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("not a power series: {0}")]
    NotPowerSeries(String),
    #[error("series too short: at least {required} terms needed")]
    InsufficientTerms { required: usize },
    #[error("timeout")]
    Timeout,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
