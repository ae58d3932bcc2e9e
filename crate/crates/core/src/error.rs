use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported extension degree {0} (expected 1..=4)")]
    UnsupportedDegree(u32),
    #[error("polynomial {0:?} is not a monic irreducible modulus")]
    ReducibleModulus(Vec<u32>),
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse element {text:?} in {domain}")]
    ParseElem { text: String, domain: String },
    #[error("enumeration of {size} cases exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("undecidable under the current strategy: {0}")]
    Undecidable(String),
    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
    #[error("iteration cap of {0} rounds reached without a fixed point")]
    IterationCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
