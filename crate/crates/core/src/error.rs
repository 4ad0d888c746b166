use thiserror::Error;

/// Errors reported by the library. Every precondition failure surfaces here
/// instead of panicking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("m must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("index {name}={value} out of range [{lo}, {hi}]")]
    IndexOutOfRange {
        name: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scan too large: {what} ({estimate}) exceeds cap {cap}")]
    ScanTooLarge {
        what: String,
        estimate: String,
        cap: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid face system: {0}")]
    InvalidFaceSystem(String),
    #[error("empty face system")]
    EmptySystem,
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        Err(Error::DimensionTooSmall { min: 2, got: m })
    } else {
        Ok(())
    }
}

pub(crate) fn check_range(name: &'static str, value: i64, lo: i64, hi: i64) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::IndexOutOfRange {
            name,
            value,
            lo,
            hi,
        })
    } else {
        Ok(())
    }
}
