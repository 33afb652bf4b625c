use thiserror::Error;

/// Errors raised by enumeration, parsing, spectrum and groupoid operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arity {0}: operations must have arity at least 2")]
    InvalidArity(usize),

    #[error("{what} requires {required} but the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: String,
        cap: u64,
    },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("infix format is only defined for binary bracketings (got arity {0})")]
    UnsupportedFormat(usize),

    #[error("operation requires arity 2, got {0}")]
    UnsupportedArity(usize),

    #[error("invalid insertion tuple {tuple}: {reason}")]
    InvalidTuple { tuple: String, reason: String },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("argument count mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("table entry {value} at index {index} is outside the carrier 0..{size}")]
    Range {
        index: usize,
        value: u64,
        size: usize,
    },

    #[error("unknown groupoid {0:?}")]
    UnknownGroupoid(String),

    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },

    #[error("{0} is evaluation-only and has no finite operation table")]
    EvaluationOnly(String),
}

pub type Result<T> = std::result::Result<T, Error>;
