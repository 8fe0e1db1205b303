use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is not covered by any block")]
    MissingVertex(String),
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("apses overlap or are out of order: {0}")]
    Overlap(String),
    #[error("congruence violated: {0}")]
    CongruenceViolation(String),
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("element set is not closed under the involution")]
    NotStarClosed,
    #[error("enumeration exceeded the cap of {0} elements")]
    ExplosionGuard(usize),
    #[error("degree {degree} exceeds the configured limit {limit}")]
    LimitExceeded { degree: usize, limit: usize },
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("unsupported range: {0}")]
    UnsupportedRange(String),
    #[error("illegal letter {0}")]
    IllegalLetter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
