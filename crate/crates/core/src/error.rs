use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("invalid weight {weight} on edge ({u}, {v})")]
    InvalidWeight { u: usize, v: usize, weight: f64 },
    #[error("vertex {vertex} out of range for a universe of {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("universe mismatch: {left} vs {right} vertices")]
    UniverseMismatch { left: usize, right: usize },
    #[error("vertex {0} is not a member of the set")]
    NotMember(usize),
    #[error("assignment entry {index} is {value}, expected -1 or +1")]
    InvalidAssignment { index: usize, value: i64 },
    #[error("budget k = {k} is invalid for n = {n}")]
    InvalidBudget { k: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
