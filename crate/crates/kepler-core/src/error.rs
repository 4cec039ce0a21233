//! Shared error type.
//!
//! Callers distinguish two failure families: genuine errors (bad input,
//! division by zero, exhausted precision) and *hypothesis not met* — the
//! input is well-formed but outside the domain of the requested theorem
//! (e.g. a two-row union for parameters where the rank is too small). The
//! CLI maps the latter to exit code 2.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// The engine only works over Q_p for odd primes p ≥ 3.
    #[error("p must be an odd prime (got {0})")]
    InvalidPrime(u64),

    /// Structurally invalid input (zero coefficient, empty sequence, …).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Division by zero in exact arithmetic.
    #[error("division by zero")]
    DivisionByZero,

    /// A truncated computation ran out of guaranteed digits.
    #[error("precision exhausted: {context} (needed more than {max} digits; raise KEPLER_MAX_PREC)")]
    PrecisionExhausted { max: u32, context: String },

    /// Input is valid but the requested theorem does not apply to it.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    /// Mixed ambient fields (different primes or extensions) in one operation.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
}
