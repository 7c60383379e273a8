use thiserror::Error;

/// Errors raised by the symbolic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown color label `{0}`")]
    UnknownColor(String),

    #[error("invalid color set: {0}")]
    InvalidColors(String),

    #[error("basis element of degree {degree} exceeds truncation order {trunc}")]
    DegreeOverflow { degree: usize, trunc: usize },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("expected value {expected} at the empty word, found {found}")]
    UnitValue { expected: String, found: String },

    #[error("series is not a character")]
    NotCharacter,

    #[error("series is not an infinitesimal character")]
    NotInfinitesimal,

    #[error("operation requires a commutative Hopf algebra")]
    NotCommutative,

    #[error("expected a single tree, found a forest with {0} trees")]
    NotATree(usize),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
