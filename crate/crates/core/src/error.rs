use thiserror::Error;

/// Errors produced by the counting, enumeration and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {value} at ({row}, {col}) is not +1 or -1")]
    InvalidEntry { row: usize, col: usize, value: i64 },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },

    #[error("expected {expected} entries, got {actual}")]
    EntryCount { expected: usize, actual: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("matrix text, line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("enumeration of A({rows},{cols}) needs {needed} candidates, budget is {budget}")]
    BudgetExceeded {
        rows: usize,
        cols: usize,
        needed: String,
        budget: u64,
    },

    #[error("DP layer {layer} holds {states} states, capacity is {capacity}")]
    Capacity {
        layer: usize,
        states: usize,
        capacity: usize,
    },

    #[error("column sum {value} at column {col} is not supported (only -1, 0, 1)")]
    UnsupportedColumnSum { col: usize, value: i64 },

    #[error("expected a matrix with {expected} rows, got {actual}")]
    WrongRowCount { expected: usize, actual: usize },

    #[error("matrix is not good (discrepancy {discrepancy})")]
    NotGood { discrepancy: u64 },

    #[error("column with sum {sum} has no unit step")]
    NotUnitColumn { sum: i64 },

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("{0} does not majorize {1}")]
    NotMajorized(String, String),

    #[error("parity mismatch between {0} and {1}")]
    ParityMismatch(String, String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("b-file line {line}: {reason}")]
    BFile { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
