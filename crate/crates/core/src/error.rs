use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller passed arguments that violate an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A process model failed validation.
    #[error("invalid model configuration: {0}")]
    Config(String),

    /// The requested computation is not supported for this model or exceeds
    /// the enumeration budget.
    #[error("capability error: {0}")]
    Capability(String),

    /// The quantity is undefined, e.g. conditioning on a zero-probability event.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Text could not be decoded in the requested alphabet mode.
    #[error("decode error at byte offset {offset}: {message}")]
    Decode { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability(_))
    }
}
