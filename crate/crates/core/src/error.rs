use std::fmt::Display;

use thiserror::Error;

/// A primitive was evaluated outside the open domain where its first and
/// second derivatives exist.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{op}: {detail}")]
pub struct DomainError {
    pub op: &'static str,
    pub detail: String,
}

impl DomainError {
    pub fn new(op: &'static str, detail: impl Into<String>) -> Self {
        DomainError {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn outside(op: &'static str, at: impl Display) -> Self {
        DomainError::new(op, format!("argument {at} is outside the differentiable domain"))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error("function takes {expected} arguments but the point has {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("evaluation point must have at least one coordinate")]
    EmptyPoint,

    /// Two calls of the same function at the same point produced different
    /// primal values, so the function is not pure.
    #[error("primal value of call {call} differs from the first call; the function is not pure")]
    InconsistentPrimal { call: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),
}
