use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid json: {0}")]
    Json(String),

    #[error("{what} needs {required} evaluations, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("inconsistent local marginals: {0}")]
    Inconsistent(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("lift with signing index {index} ({signs:?}): {source}")]
    LiftFailed {
        index: u64,
        signs: Vec<i8>,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
