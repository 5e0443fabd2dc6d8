use thiserror::Error;

/// Errors raised by the instance model and the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    /// A solver was called on an instance outside its contract
    /// such as a demand shape or graph class it does not handle.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("vertex weights too large for exact integer scaling")]
    WeightOverflow,

    #[error("generation failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, EmError>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(EmError::Input(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(EmError::Contract(msg.into()))
}
