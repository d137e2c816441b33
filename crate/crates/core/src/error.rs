use thiserror::Error;

/// Errors reported by the library.
///
/// `Validation` means the input violates a precondition (wrong dimensions,
/// out-of-range coordinates, malformed data). `Refused` means the request is
/// well-formed but the search or allocation it implies exceeds the configured
/// budget; the message carries the estimate or the node count reached.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),

    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn refused(msg: impl Into<String>) -> Self {
        Error::Refused(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
