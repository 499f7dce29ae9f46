use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("graph does not have property (B): {0}")]
    PropertyB(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("enumeration bound exceeded: {what} is {size}, limit {limit}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("search budget of {0} states exceeded")]
    BudgetExceeded(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("inconsistent relation instance: {0}")]
    Inconsistency(String),
    #[error("character does not vanish on relation: {0}")]
    CharacterRelation(String),
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
