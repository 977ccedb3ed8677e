use thiserror::Error;

use crate::algebra::Generator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parity violation: {letter}({mode}) {reason}")]
    Parity { letter: char, mode: i64, reason: &'static str },

    #[error("{0} is outside the domain of psi (needs a positive mode)")]
    NotPositive(Generator),

    #[error("invariant form is undefined on k")]
    FormOnCentral,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Whittaker type: {0}")]
    InvalidPsi(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is not legal in this module context")]
    IllegalMonomial(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("parity error at byte {offset}: {message}")]
    ParityAt { offset: usize, message: String },

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("incomplete parameters: {0}")]
    IncompleteParams(String),

    #[error("{0}")]
    Precondition(String),

    #[error("iteration did not terminate within {0} steps")]
    NotNilpotent(usize),
}
