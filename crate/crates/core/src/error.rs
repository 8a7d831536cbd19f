use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("not a bijection of 1..={n}: {reason}")]
    NotABijection { n: usize, reason: String },
    #[error("cannot parse {what}: {text:?}")]
    Parse { what: &'static str, text: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("run D({k},{j}) out of range for degree {n}")]
    RunOutOfRange { n: usize, k: usize, j: usize },
    #[error("cycle not in standard form (must start with its maximum)")]
    NotStandardForm,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("n = {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("cycle too short for a polygon (length {0} < 3)")]
    TooShort(usize),
    #[error("permutation is not b-simple")]
    NotBSimple,
    #[error("permutation is not c-simple")]
    NotCSimple,
    #[error("permutation is not g-simple")]
    NotGSimple,
    #[error("integer overflow in exact computation: {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
