use thiserror::Error;

/// Errors reported by shape validation, statistics, and bijections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape has no rows")]
    EmptyShape,
    #[error("rows {0} and {1} are not comparable (neither interval contains the other)")]
    NotComparable(usize, usize),
    #[error("column {0} is not contiguous across rows")]
    NotColumnConvex(usize),
    #[error("column {0} meets no row")]
    EmptyColumn(usize),
    #[error("{what} index {index} out of range 1..={limit}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("infeasible row/column sums: {0}")]
    InfeasibleSums(String),
    #[error("cell ({row}, {col}) lies outside the shape")]
    CellOutsideShape { row: usize, col: usize },
    #[error("row {0} carries more than one 1-cell")]
    MultipleOnesInRow(usize),
    #[error("malformed composition sequence: {0}")]
    MalformedComposition(String),
    #[error("shape is not a rectangle")]
    NotARectangle,
    #[error("no pivot column found; filling is not in the image of the first-row map")]
    NoPivotFound,
    #[error("shapes are not row permutations of each other")]
    ShapeMismatch,
    #[error("letter {letter} at position {pos} outside alphabet 1..={limit}")]
    LetterOutOfRange {
        pos: usize,
        letter: usize,
        limit: usize,
    },
    #[error("invalid endpoint sets: {0}")]
    InvalidEndpointSets(String),
    #[error("inexact polynomial division (internal invariant violated)")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
