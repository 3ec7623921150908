use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid cell symbol {0:?}, expected 0, 1 or ?")]
    BadSymbol(char),

    #[error("invalid clue {0:?}")]
    BadClue(String),

    #[error("clues must be at least 1")]
    ZeroClue,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("positions {first} and {second} share a face but have different values")]
    EqualityViolation { first: usize, second: usize },

    #[error("position {0} is unsettled, expected a fix")]
    NotAFix(usize),

    #[error("cell id {id} out of range for {cell_count} cells")]
    CellOutOfRange { id: usize, cell_count: usize },

    #[error("prefill of cell {0} must be 0 or 1")]
    UnsettledPrefill(usize),

    #[error("description of {line} does not fit in {len} cells")]
    ClueOverflow { line: String, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("letters interleave as x..y..x..y; the line is not nested")]
    NotNested,

    #[error("line has repeated letters")]
    RepeatedLetters,

    #[error("line is inconsistent with its description")]
    Inconsistent,

    #[error("{faces} unsettled faces exceed the oracle bound of {bound}")]
    OracleBound { faces: usize, bound: usize },

    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("sequence {side} of curve {curve:?} is not nested and expert fallback is disabled")]
    ExpertLine { curve: String, side: &'static str },

    #[error("line order must be a permutation of 0..{0}")]
    BadOrder(usize),

    #[error(transparent)]
    Line(#[from] LineError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("input nonogram has {0} solutions, expected exactly one")]
    NotUnique(usize),

    #[error(transparent)]
    Line(#[from] LineError),

    #[error(transparent)]
    Solve(#[from] SolveError),
}
