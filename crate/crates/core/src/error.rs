use thiserror::Error;

/// Errors raised by constructors, checkers and constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("invalid comparison: sets of sizes {left} and {right}")]
    InvalidComparison { left: usize, right: usize },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("set is not admissible: {0}")]
    NotAdmissible(String),

    #[error("invalid pair input: {0}")]
    InvalidPairInput(String),

    #[error("empty projection: no basis contains {0}")]
    EmptyProjection(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("induced binary form does not split over the field")]
    NonSplitForm,

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
