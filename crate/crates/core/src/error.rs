use thiserror::Error;

/// Errors raised by validation and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is outside the supported range 1..=16")]
    UnsupportedDimension(usize),

    #[error("not Hermitian: max asymmetry {0:e}")]
    NotHermitian(f64),

    #[error("not positive semidefinite: min eigenvalue {0:e}")]
    NotPsd(f64),

    #[error("trace is not 1: got {0}")]
    Trace(f64),

    #[error("not trace preserving: completeness error {0:e}")]
    NotTracePreserving(f64),

    #[error("not unitary: max deviation {0:e}")]
    NotUnitary(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
