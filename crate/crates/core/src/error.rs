use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("invalid {arg}: {reason}")]
    Domain { arg: &'static str, reason: String },

    /// An argument inside the domain but beyond what this crate computes.
    #[error("{arg} = {value} exceeds the supported limit {limit}")]
    Capacity {
        arg: &'static str,
        value: u64,
        limit: u64,
    },

    /// Two independent computations disagreed.
    #[error("verification failed for n = {n}: {detail}")]
    Verification { n: u64, detail: String },

    /// A computed value violates a bound it is known to satisfy.
    #[error("data inconsistency at n = {n}: {detail}")]
    DataInconsistency { n: u64, detail: String },

    #[error("{path}: {detail}")]
    Format { path: PathBuf, detail: String },

    /// Failure while computing the row for `n` of a multi-row request.
    #[error("n = {n}: {source}")]
    Row { n: u64, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(arg: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            arg,
            reason: reason.into(),
        }
    }

    pub(crate) fn zero(arg: &'static str) -> Self {
        Error::domain(arg, "must be at least 1, got 0")
    }
}
