use thiserror::Error;

/// Errors raised by the models, the Monte Carlo engine and the CLI layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is singular at the requested point.
    #[error("singularity: {0}")]
    Singularity(String),

    /// The requested combination has no closed form in this crate.
    #[error("not implemented: {0}")]
    NotImplemented(String),

    /// Invalid run configuration (sample counts, shard counts, flags).
    #[error("config error: {0}")]
    Config(String),

    /// A Monte Carlo estimate cannot be transformed because it is degenerate.
    #[error("degenerate estimate: {0}")]
    DegenerateEstimate(String),

    /// A denominator law that is not a probability mass function.
    #[error("invalid law: {0}")]
    InvalidLaw(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
