use alloc::string::String;
use core::fmt;

/// Errors surfaced by the geometry kernel and the modules built on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector or matrix had the wrong number of coordinates.
    DimensionMismatch { expected: usize, got: usize },
    /// An operation that needs a nonzero cone was handed the cone `{0}`.
    DegenerateCone,
    /// An enumeration would exceed the configured hyperplane cap.
    CapExceeded { hyperplanes: usize, cap: usize },
    /// Malformed input (zero normal, non-increasing cuts, missing node, ...).
    InvalidInput(String),
    /// A precondition documented on the operation was violated by the caller.
    ContractViolation(String),
    /// An internal consistency assertion failed; this is a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DegenerateCone => write!(f, "degenerate cone {{0}}"),
            Error::CapExceeded { hyperplanes, cap } => {
                write!(f, "{hyperplanes} hyperplanes exceed the enumeration cap {cap}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
