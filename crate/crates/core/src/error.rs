use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Each variant maps onto a stable, machine-readable reason code (see
/// [`Error::code`]) which the CLI prints on failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("invalid modulus {0}: must be a prime >= 2")]
    InvalidModulus(String),

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("not enough points: {points} points in projective dimension {n}")]
    NotEnoughPoints { points: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("symbolic cap exceeded: C(n+d,n) = {size} > {cap}")]
    SymbolicCap { size: usize, cap: usize },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch { .. } => "ring-mismatch",
            Error::InexactDivision(_) => "inexact-division",
            Error::DivisionByZero => "division-by-zero",
            Error::Arity { .. } => "arity-mismatch",
            Error::InvalidModulus(_) => "invalid-modulus",
            Error::Shape(_) => "shape-violation",
            Error::Index(_) => "index-out-of-range",
            Error::NotEnoughPoints { .. } => "not-enough-points",
            Error::Parse(_) => "parse-error",
            Error::Unsupported(_) => "unsupported",
            Error::SymbolicCap { .. } => "symbolic-cap-exceeded",
        }
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
