use thiserror::Error;

/// Everything that can go wrong while building or analysing a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("infinite value where a finite one is required")]
    InfiniteValue,

    #[error("subgroup generator {witness} is not in the ambient group")]
    NotSubgroup { witness: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("resultant of two zero polynomials is undefined")]
    ZeroResultant,

    #[error("extension not certified unique: {reason} (polygon {polygon})")]
    NotCertified { reason: String, polygon: String },

    #[error("degree {degree} is not below {bound}; reduce first")]
    DegreeTooLarge { degree: usize, bound: usize },

    #[error("pair is not certified minimal: {0}")]
    NotMinimal(String),

    #[error("element of value {0} has no residue")]
    NegativeValuation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
