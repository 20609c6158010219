use thiserror::Error;

use crate::graded::GeneratorSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a class over {expected}, got one over {found}")]
    SystemMismatch {
        expected: String,
        found: GeneratorSystem,
    },
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("invalid generator system: {0}")]
    InvalidSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{class} is not almost primitive of order {order}")]
    NotAlmostPrimitive { class: String, order: u32 },
    #[error("the fixed data are inconsistent: no solution")]
    NoSolution,
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
