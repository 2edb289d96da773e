use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} outside admissible range {lo}..={hi}")]
    IndexOutOfRange { index: isize, lo: isize, hi: isize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("singular pivot at row {row} (pivot magnitude {pivot:e}, scale {scale:e})")]
    Singular { row: usize, pivot: f64, scale: f64 },

    #[error("integration failed at step {step}: {reason}")]
    Integration { step: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
