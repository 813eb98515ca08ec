use thiserror::Error;

use crate::hooks::HookAssignment;
use crate::word::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("element {element} is outside the ground set [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("element {0} appears more than once")]
    RepeatedElement(usize),

    #[error("ground set must be non-empty")]
    EmptyGroundSet,

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("falling factorial {x}_({r}) is undefined for r > x")]
    FallingFactorialRange { x: u128, r: u128 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("not a minimal transitive star factorization: {0}")]
    InvalidFactorization(String),

    #[error("invalid word {word}: {reason}")]
    InvalidWord { word: Word, reason: String },

    #[error("coordinate out of range: {0}")]
    OutOfRange(String),

    #[error("invalid hook assignment: {0}")]
    InvalidHookAssignment(String),

    #[error("tree is not in the class: {0}")]
    TreeNotInClass(String),

    #[error("word {word} has {} hook-assignment preimages", witnesses.len())]
    AmbiguousPreimage {
        word: Word,
        witnesses: Vec<HookAssignment>,
    },

    #[error("word {word} has no hook-assignment preimage")]
    MissingPreimage { word: Word },

    #[error("search budget of {budget} node expansions exceeded")]
    BudgetExceeded { budget: u64 },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }

    /// True for the two outcomes that witness a failure of bijectivity.
    pub fn is_preimage_failure(&self) -> bool {
        matches!(
            self,
            Error::AmbiguousPreimage { .. } | Error::MissingPreimage { .. }
        )
    }
}
