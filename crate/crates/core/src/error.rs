use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("distribution file, line {line}: {message}")]
    DistributionFormat { line: usize, message: String },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("subset mask must be nonempty")]
    EmptyMask,

    #[error("subset masks must be disjoint")]
    OverlappingMasks,

    #[error("mask {mask:#b} does not fit arity {arity}")]
    MaskOutOfRange { mask: u32, arity: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {0} is outside the supported range")]
    ArityOutOfRange(usize),

    #[error("parameter {param} is outside the domain of family {family}")]
    OutOfDomain { family: String, param: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("series index k must be at least 1, got {0}")]
    InvalidSeriesIndex(u32),

    #[error("unknown inequality `{0}`")]
    UnknownInequality(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("inequality {inequality} has no refutation pairing with family {family}")]
    Unpaired { inequality: String, family: String },

    #[error("parameter sweep exhausted without a witness: {0}")]
    SweepExhausted(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("invalid registry entry: {0}")]
    Registry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
