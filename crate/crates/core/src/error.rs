use thiserror::Error;

/// Errors raised by lattice, code and series operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An enumeration, search or sweep exceeded its configured budget.
    /// No partial result is returned.
    #[error("{what} budget exhausted (limit {limit})")]
    Budget { what: &'static str, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A quantity is not representable in the scalar field.
    #[error("not representable: {0}")]
    Representation(String),

    #[error("singular matrix")]
    Singular,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("not a unimodular theta prefix: {0}")]
    NotUnimodularPrefix(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("unknown lattice name `{0}`")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
