use thiserror::Error;

/// Errors raised while building rings or running the zero-divisor engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("basis index {index} out of range (ring has {len} basis elements)")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("slot {slot} out of range 1..={s}")]
    SlotOutOfRange { slot: usize, s: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("classes belong to different rings")]
    RingMismatch,

    #[error("class is not homogeneous")]
    NotHomogeneous,

    #[error("unknown label '{label}'")]
    UnknownLabel { label: String },

    #[error("duplicate label '{label}'")]
    DuplicateLabel { label: String },

    #[error("degree inconsistency: {0}")]
    DegreeInconsistency(String),

    #[error("conflicting products listed for {a} * {b}")]
    ConflictingProduct { a: String, b: String },

    #[error("associativity fails on ({a}, {b}, {c})")]
    NotAssociative { a: String, b: String, c: String },

    #[error("not a Poincaré-duality ring: {0}")]
    NotPoincareDuality(String),

    #[error("top degree mismatch: {left} vs {right}")]
    TopDegreeMismatch { left: usize, right: usize },

    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
