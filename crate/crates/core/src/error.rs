use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("{what} has {count} nodes, above the limit of {limit}; pass --max-nodes to override")]
    GuardExceeded {
        what: String,
        count: usize,
        limit: usize,
    },
    #[error("malformed input at `{field}`: {message}")]
    Format { field: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
