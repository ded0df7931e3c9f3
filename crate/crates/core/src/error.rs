use thiserror::Error;

/// Errors raised by the construction and verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violates an operation's precondition (zero polynomial,
    /// non-monic modulus, non-square matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A supplied or computed certificate does not check out.
    #[error("certificate failure: {0}")]
    Certificate(String),

    /// Two moduli handed to the CRT lift are not strongly coprime.
    #[error("moduli #{first} and #{second} are not strongly coprime (resultant {resultant})")]
    NotCoprime {
        first: usize,
        second: usize,
        resultant: String,
    },

    /// A floating-point stage produced a result outside its residual bound.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A bounded search finished without finding what it was looking for.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// A certified sign could not be decided within the precision budget.
    #[error("undetermined within budget: {0}")]
    Undetermined(String),

    /// A freshly built object failed its own verification.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
