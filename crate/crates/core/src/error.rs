use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown or unsupported algebra: {0}")]
    UnknownAlgebra(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("not a positive root: {0}")]
    NotARoot(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("identically singular: denominator factor {factor} vanishes on the target")]
    IdenticallySingular { factor: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bracket [e_{nu}, f_{gamma}] is a raising operator")]
    RaisingBracket { nu: String, gamma: String },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
