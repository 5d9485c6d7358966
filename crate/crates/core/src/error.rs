use thiserror::Error;

/// Errors shared by every solver in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("instance too large for exact search: {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
