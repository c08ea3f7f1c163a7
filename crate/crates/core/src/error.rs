use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid selection profile: {0}")]
    InvalidProfile(String),

    #[error("argument outside the function's domain: {0}")]
    Domain(String),

    #[error("invalid threshold query: {0}")]
    InvalidQuery(String),

    #[error("instance too large for exhaustive enumeration: {0}")]
    InstanceTooLarge(String),

    #[error("sweep cell (model={model}, k={k}, gamma={gamma}) failed: {source}")]
    Cell {
        model: String,
        k: u32,
        gamma: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by the caller's inputs rather than the runtime.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::InvalidParameter(_)
            | Error::InvalidProfile(_)
            | Error::Domain(_)
            | Error::InvalidQuery(_)
            | Error::InstanceTooLarge(_)
            | Error::Json(_) => true,
            Error::Cell { source, .. } => source.is_usage(),
            Error::Io(_) | Error::Csv(_) => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
