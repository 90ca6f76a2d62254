use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Both operands of a product carry formal generators.
    #[error("product of two formal symbols is outside the class module")]
    SymbolProduct,

    #[error("domain error: {0}")]
    Domain(String),

    /// Raised when an invariant that valid input can never break is broken.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    #[error("modulus {0} is not a supported prime (need a prime below 2^15)")]
    InvalidPrime(u64),

    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected a form of rank {expected}, found rank {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("fiber over {case} lines is not uniform")]
    NonUniformFiber { case: &'static str },

    #[error("no generic W over F_{prime} found in {attempts} draws (seed {seed})")]
    GenericityExhausted { prime: u32, seed: u64, attempts: u32 },

    #[error("derivation mismatch: {0}")]
    DerivationMismatch(String),

    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
