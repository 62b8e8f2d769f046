use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The requested Fock space (or a state inside it) does not fit the configured limits.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("mode index {mode} out of range for {num_modes} modes")]
    BadMode { mode: usize, num_modes: usize },

    #[error("operands live on different Fock spaces")]
    SpaceMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
