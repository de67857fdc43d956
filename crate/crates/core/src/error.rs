use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured memory or size budget would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// No sign change was found while bracketing a real zero.
    #[error("zero search failed: {0}")]
    SearchFailure(String),

    /// Two independent evaluation routes disagree beyond tolerance.
    #[error("numerical consistency check failed: {0}")]
    NumericalConsistency(String),

    /// The function is too small somewhere on a contour to trust its argument.
    #[error("possible zero on contour: {0}")]
    BoundaryZero(String),
}

pub type Result<T> = std::result::Result<T, Error>;
