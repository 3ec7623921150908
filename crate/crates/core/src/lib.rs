//! Solving and generating curved nonograms.
//!
//! A curved nonogram is modelled without geometry: global cells plus, for
//! each curve, the ordered cells on its right and left side with a
//! description per side. [`line`] decides and settles single sequences whose
//! repeated cells are properly nested, [`solver`] iterates that to a
//! fixpoint, [`oracle`] enumerates fixes exhaustively for cross-checking, and
//! [`reduction`] turns a classic nonogram into an expert curved one whose
//! single long sequence carries every row and column.

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod gen;
pub mod line;
pub mod model;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use error::{LineError, ModelError, SolveError};
pub use line::{
    check_consistency, pad_line, settle_basic_fast, settle_naive, settle_topdown, translate_description,
    DecompositionTree, LineMethod,
};
pub use model::{
    classic_to_puzzle, classify_line, classify_puzzle, fix_consistent, is_refinement, CellState, ClassicNonogram,
    Curve, Description, Difficulty, LineProblem, LineSpec, Puzzle, Sequence, Side,
};
pub use solver::{full_settle, is_simple, Board, SolveOptions, SolveReport, Verdict};
