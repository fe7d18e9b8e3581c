use thiserror::Error;

/// Errors produced while building algebraic data or evaluating the connection.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{0} is not a root of the system")]
    NotARoot(String),

    #[error("invalid root coordinates {0:?}: {1}")]
    InvalidRoot(Vec<i32>, &'static str),

    #[error("no canonical pair exists for a root and its own negative or itself")]
    UndefinedPair,

    #[error("representation error: {0}")]
    Representation(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
