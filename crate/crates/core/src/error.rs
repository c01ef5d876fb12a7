//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by the exact and numeric engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix or vector had the wrong shape.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two series in different formal variables were combined.
    #[error("incompatible series variables `{0}` and `{1}`")]
    IncompatibleVariables(String, String),
    /// The requested truncation order cannot support the computation.
    #[error("truncation error: {0}")]
    Truncation(String),
    /// A variable has no weight, or a table mismatch was detected.
    #[error("configuration error: {0}")]
    Configuration(String),
    /// A parameter range the implementation does not cover.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A numeric routine could not reach the requested accuracy.
    #[error("precision error: {0}")]
    Precision(String),
    /// A sample point lies outside the validated convergence region.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// A numeric matrix was too ill-conditioned to trust.
    #[error("conditioning error: {0}")]
    Conditioning(String),
    /// An object was used before it reached the required state.
    #[error("state error: {0}")]
    State(String),
    /// A sample collided with a zero or pole locus too often.
    #[error("sampling error: {0}")]
    Sampling(String),
    /// Malformed user input.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
