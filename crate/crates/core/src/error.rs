use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid scheme: {0}")]
    Scheme(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("retries exhausted in {step}: {detail}")]
    Retries { step: String, detail: String },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
