use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative method, series or quadrature did not reach its tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// A denominator in a closed-form expression vanished.
    #[error("singular parameters: {0}")]
    Singular(String),
    /// Eigenmodes could not be matched between two nearby parameter values.
    #[error("mode tracking failed: {0}")]
    Tracking(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }
}
