//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Argument outside the function's domain (wrong residue class, zero
    /// where a positive integer is required, malformed form string, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested quadruple has no registered closed formula.
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    /// An enumeration loop exceeded its iteration cap.
    #[error("work budget exhausted: {spent} iterations (cap {cap})")]
    Budget { spent: u64, cap: u64 },

    /// An internal exactness guarantee failed (non-exact rational prefactor,
    /// count not divisible by 16, ...). Always indicates a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
