use thiserror::Error;

/// Errors surfaced by the bound calculus and the sieve engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("invalid exponent pair (k={k}, l={l}): {reason}")]
    InvalidPair {
        k: String,
        l: String,
        reason: &'static str,
    },

    #[error("derivation word `{0}` is malformed: {1}")]
    BadDerivation(String, &'static str),

    #[error("catalog is empty")]
    EmptyCatalog,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("no smooth witness in the interval below x={0}")]
    NoWitness(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
