//! Error taxonomy shared by every module.
//!
//! Policy: no NaN or infinity escapes an operation; anything non-finite
//! is converted into an error at the operation boundary.

use thiserror::Error;

/// Errors produced by kernel and engine operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EtaError {
    /// Input outside the operation's domain (e.g. non-positive power base,
    /// argument off the open strip).
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a pole; carries a description of the offending point.
    #[error("pole: {0}")]
    Pole(String),

    /// Excluded point of the eta/zeta conversion (2^(1-s) = 1 with s != 1).
    #[error("excluded point: {0}")]
    ExcludedPoint(String),

    /// Request exceeds a summation budget; the message names the
    /// tail-based identity to use instead.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Requested precision cannot support the computation (cancellation
    /// floor reached); the caller should raise the precision.
    #[error("insufficient precision: {0}")]
    PrecisionInsufficient(String),

    /// Configuration invariant violated or iteration failed to converge
    /// under the configured caps.
    #[error("configuration error: {0}")]
    Config(String),

    /// A factor denominator is numerically singular.
    #[error("singular factor: {0}")]
    SingularFactor(String),

    /// No zero found inside the requested bracket.
    #[error("no zero in bracket: {0}")]
    NoZero(String),

    /// An intermediate became NaN or infinite.
    #[error("non-finite intermediate in {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, EtaError>;
