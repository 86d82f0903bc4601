//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by scene handling, array construction, tracing, and
/// dataset operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An input value violates a documented invariant (bad scene file,
    /// invalid material, malformed grid, empty mask, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A numeric argument is outside the function's documented domain
    /// (angle range, steering hemisphere, sampling rate, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Geometry that cannot be processed (degenerate wedge, receiver
    /// coincident with an antenna element, ...).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A band plan or configuration reference that cannot be resolved.
    #[error("configuration error: {0}")]
    Config(String),

    /// Synthetic scene placement could not satisfy the request.
    #[error("placement failure: placed {placed} of {requested} buildings without overlap")]
    Placement { placed: usize, requested: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
