use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A request beyond what the implementation supports (order caps, missing closed forms).
    #[error("capability exceeded: {0}")]
    Capability(String),
    /// The equation degenerates and the construction does not apply.
    #[error("degenerate equation: {0}")]
    Degenerate(String),
    /// The parameters lie outside the region where a solution is constructed.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// A root scan found no sign change.
    #[error("bracket error: {0}")]
    Bracket(String),
    /// The operation is not defined for this kind of input.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A constructed object failed its own consistency check.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
