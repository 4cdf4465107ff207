//! Error types shared across the library.

use thiserror::Error;

/// Failures surfaced by library operations.
///
/// Structural misuse (mixing fields or alphabets inside arithmetic
/// operators) panics instead: those are caller bugs, not data errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^62)")]
    BadModulus(u64),
    #[error("mismatched fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{value} has no image in {field}")]
    NotRepresentable { value: String, field: String },
    #[error("empty word")]
    EmptyWord,
    #[error("word {0} lies outside R_(z)")]
    OutsideRz(String),
    #[error("no generator has a nonconstant image")]
    AllImagesConstant,
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("matrix order {0} is not prime")]
    OrderNotPrime(usize),
    #[error("{0} must not be a scalar")]
    ScalarOperand(&'static str),
    #[error("characteristic {p} too small: need p > {required}")]
    CharacteristicTooSmall { p: u64, required: usize },
    #[error("degree bound must be at least 1")]
    DegreeBound,
    #[error("root exponent must be at least 2, got {0}")]
    RootExponent(u32),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
