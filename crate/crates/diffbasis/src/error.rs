use thiserror::Error;

/// Errors shared across the crate. Validation failures are structured and
/// kept distinct from a `fail` verification verdict: a malformed certificate
/// is an [`Error`], a well-formed certificate that does not cover its target
/// verifies to [`crate::Verified::Fail`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} exceeds the configured cap")]
    FieldTooLarge(u64),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("ambient group orders differ: {0} vs {1}")]
    AmbientMismatch(u64, u64),
    #[error("{divisor} does not divide {n}")]
    NotDivisor { divisor: u64, n: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
