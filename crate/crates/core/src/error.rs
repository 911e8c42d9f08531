use thiserror::Error;

/// Errors raised while validating inputs or evaluating code designs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet must contain at least 2 symbols, got {len}")]
    TooSmallAlphabet { len: usize },

    #[error("probability at index {index} is not strictly positive: {value}")]
    NonPositiveProbability { index: usize, value: f64 },

    #[error("value at index {index} is not finite: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 (tolerance 1e-9)")]
    NotNormalized { sum: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("support violation at index {index}: p > 0 where q = 0")]
    SupportViolation { index: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("weight at index {index} is not strictly positive: {value}")]
    ZeroWeight { index: usize, value: f64 },

    #[error("alphabet of size {len} exceeds enumeration limit {max}")]
    AlphabetTooLarge { len: usize, max: usize },

    #[error("radius {0} outside [0, 2]")]
    InvalidRadius(f64),

    #[error("alpha {0} outside [0, 1]")]
    InvalidAlpha(f64),

    #[error("code base {0} must be at least 2")]
    InvalidBase(u32),

    #[error("length at index {index} is negative or not finite: {value}")]
    InvalidLength { index: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
