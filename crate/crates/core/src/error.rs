use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph6 input; `offset` is the byte position of the problem.
    #[error("graph6 parse error at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A request the library declines to run (enumeration bounds, truncated inputs).
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
