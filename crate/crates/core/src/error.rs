use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point id {id} out of range (n = {n})")]
    IndexOutOfRange { id: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// No solution satisfies the coverage requirements (or the search found none).
    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("node budget of {budget} exhausted")]
    NodeBudgetExceeded { budget: u64 },

    #[error("instance exceeds oracle caps: {0}")]
    OracleCapExceeded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
