//! Error types shared across the crate.

use thiserror::Error;

/// Row/column selector for line-wise matrix operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("cannot factor D^{requested} out of {axis} {index}: minimum valuation is {available}")]
    FactorTooLarge {
        axis: Axis,
        index: usize,
        requested: usize,
        available: usize,
    },

    #[error("symbol width {got} does not match expected width {expected}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("matrix has an all-zero {axis} at index {index}")]
    DegenerateMatrix { axis: Axis, index: usize },

    #[error("advancing by {delay} drops a nonzero symbol at time {time}")]
    AdvanceUnderflow { delay: usize, time: usize },

    #[error("state shape does not match the matrix")]
    ShapeMismatch,

    #[error("trellis needs 2^{ocl} states, over the cap of {cap}")]
    TrellisTooLarge { ocl: usize, cap: u64 },

    #[error("no admissible path")]
    NoAdmissiblePath,

    #[error("path count exceeds cap {cap}")]
    TooManyPaths { cap: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("entry ({row}, {col}) is not a monomial")]
    NotMonomial { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
