use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("unknown irrep {label} for group {group}")]
    UnknownIrrep { group: String, label: i64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
    #[error("unsupported grid: {0}")]
    UnsupportedGrid(String),
    /// The quadrature or dual band is too small for the requested computation.
    #[error("precision error: {0}")]
    Precision(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
