use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("ring mismatch: {0}")]
    ModeMismatch(String),

    #[error("operation requires a field of positive characteristic: {0}")]
    FieldOnly(String),

    #[error("scale guard exceeded: {what} (limit {limit})")]
    Scale { what: String, limit: String },

    #[error("Leibniz rule fails for {0}")]
    Leibniz(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("entry of degree {degree} does not lie below p^{s}; raise s")]
    DegreeTooHigh { degree: usize, s: u32 },

    #[error("window too short: {0}")]
    WindowTooShort(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn scale(what: impl Into<String>, limit: impl ToString) -> Self {
        Error::Scale {
            what: what.into(),
            limit: limit.to_string(),
        }
    }
}
