use thiserror::Error;

use crate::Element;

/// Errors raised by constructions and checks in this crate.
///
/// Variants split into two families: malformed input (`Arity`, `OutOfRange`,
/// `InvalidTable`, `Schema`, ...) and mathematical failures where the data is
/// well formed but does not satisfy an axiom (`GroupAxiom`, `NoSolution`,
/// `InvalidPresentation`, ...). [`Error::is_input_error`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a tuple of length {expected}, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("element {element} is out of range for a carrier of size {size}")]
    OutOfRange { element: Element, size: usize },

    #[error("slot {slot} is out of range for arity {arity} (slots are 1-based)")]
    Slot { slot: usize, arity: usize },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("{axiom} fails; witness {witness:?}")]
    GroupAxiom {
        axiom: &'static str,
        witness: Vec<Element>,
    },

    #[error("{required} instances exceed the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("no Hosszu-Gloskin presentation is attached")]
    NoPresentation,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("equation at slot {slot} with target {target} has no solution")]
    NoSolution { slot: usize, target: Element },

    #[error("equation at slot {slot} with target {target} has {count} solutions")]
    MultipleSolutions {
        slot: usize,
        target: Element,
        count: usize,
    },

    #[error("no presentation reproduces the operation over base point {base_point}")]
    NoPresentationFound { base_point: Element },

    #[error("carrier of size {size} exceeds the search limit {limit}")]
    SearchTooLarge { size: usize, limit: usize },

    #[error("invalid index poset: {0}")]
    Index(String),

    #[error("unknown level {0:?}")]
    UnknownLevel(String),

    #[error("levels {0:?} and {1:?} are not comparable")]
    Incomparable(String, String),

    #[error("invalid inverse system: {0}")]
    System(String),

    #[error("incompatible thread: {0}")]
    Thread(String),

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a failed axiom.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Arity { .. }
                | Error::OutOfRange { .. }
                | Error::Slot { .. }
                | Error::InvalidTable(_)
                | Error::UnknownLevel(_)
                | Error::Schema(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Schema(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
