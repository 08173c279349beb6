use thiserror::Error;

#[derive(Debug, Error)]
pub enum IflError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("computation failed: {0}")]
    Computation(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("data integrity violation: {0}")]
    Integrity(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, IflError>;
