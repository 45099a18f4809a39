use thiserror::Error;

/// Errors produced by the library.
///
/// Invalid-input variants are distinguished from resource-budget variants so the
/// command line can map them onto different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("the generators do not span a reduced monoid (a nonzero combination sums to zero)")]
    NotReduced,

    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),

    #[error("generators {0} and {1} are equal")]
    DuplicateGenerator(usize, usize),

    #[error("no generators given")]
    NoGenerators,

    #[error("dimension mismatch: expected width {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0:?} is not an element of the monoid")]
    NotMember(Vec<i64>),

    #[error("the given grading vector is not a positivity witness for the generators")]
    InvalidWitness,

    #[error("the generators are not a minimal generating system (redundant: {0:?})")]
    NotMinimalGenerating(Vec<usize>),

    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by a resource cap rather than by the input itself.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
