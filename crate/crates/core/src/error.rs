use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be between 1 and {max}, got {n}")]
    InvalidRank { n: usize, max: usize },

    #[error("generator a{letter} is out of range for n = {n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("subset contains index {index}, outside 1..={n}")]
    SubsetOutOfRange { index: usize, n: usize },

    #[error("operands live in different ranks ({left} vs {right})")]
    RankMismatch { left: usize, right: usize },

    #[error("completion exceeded {limit} rules before becoming confluent")]
    RuleLimitExceeded { limit: usize },

    #[error("rewriting system is not complete; run completion first")]
    NotComplete,

    #[error("element enumeration exceeded the cap of {cap}")]
    ElementLimitExceeded { cap: usize },

    #[error("{what}: requested {requested}, guard is {limit}")]
    GuardExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("set sequence {0} is not monotone")]
    NotMonotone(String),

    #[error("matrix {0} contains the forbidden [[0,1],[1,0]] pattern")]
    PatternViolation(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("no closed formula for {m} rows (supported: 2..=5)")]
    UnsupportedRows { m: usize },

    #[error("closed formula for ({m}, {n}) evaluated to the non-integer {value}")]
    NonIntegralCount { m: usize, n: usize, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
