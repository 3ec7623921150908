//! Whole-puzzle propagation: settle sequences until none makes progress.
//!
//! Every sequence starts dirty. A pass visits the dirty sequences in the
//! configured order, settles each against the current board and writes the
//! forced cells back; every sequence through a changed cell becomes dirty
//! again. The loop ends when a pass finds nothing dirty.
//!
//! In parallel mode a pass settles all dirty sequences against one snapshot
//! and merges the results at the end of the pass, in order, reporting a
//! conflict if two sequences force opposite values on the same cell.
//!
//! Since a settled cell has its value in every solution refining the board,
//! the final board does not depend on the order of the sequences.

use std::fmt;

use rayon::prelude::*;

use crate::error::{LineError, SolveError};
use crate::line::{settle_with, LineMethod};
use crate::model::{classify_line, CellState, Difficulty, LineProblem, LineSpec, Puzzle, Side};
use crate::oracle::DEFAULT_BOUND;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub line_method: LineMethod,
    /// Largest number of unsettled faces handed to the oracle.
    pub oracle_bound: usize,
    /// Settle non-nested sequences with the oracle instead of failing.
    pub expert_fallback: bool,
    /// Processing order of the sequences, as indices into
    /// [`Puzzle::sequences`]. Defaults to input order.
    pub order: Option<Vec<usize>>,
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            line_method: LineMethod::Dp,
            oracle_bound: DEFAULT_BOUND,
            expert_fallback: true,
            order: None,
            parallel: false,
        }
    }
}

impl SolveOptions {
    pub fn with_method(line_method: LineMethod) -> Self {
        SolveOptions {
            line_method,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    SolvedSimple,
    Stuck,
    LineInconsistent,
    CellConflict,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SolvedSimple => "solved_simple",
            Verdict::Stuck => "stuck",
            Verdict::LineInconsistent => "line_inconsistent",
            Verdict::CellConflict => "cell_conflict",
        })
    }
}

/// Cell states indexed by global cell id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Board(Vec<CellState>);

impl Board {
    pub fn new(cells: Vec<CellState>) -> Self {
        Board(cells)
    }

    pub fn cells(&self) -> &[CellState] {
        &self.0
    }

    pub fn get(&self, id: usize) -> CellState {
        self.0[id]
    }

    pub fn is_solved(&self) -> bool {
        self.0.iter().all(|c| c.is_settled())
    }

    /// Spec of a sequence read off the board; letters are the cell ids.
    pub fn line(&self, cells: &[usize], desc: &crate::model::Description) -> LineProblem {
        let spec = LineSpec(cells.iter().map(|&c| self.0[c]).collect());
        LineProblem::new(spec, cells.to_vec(), desc.clone())
            .expect("one state per cell keeps equal letters equal")
    }
}

/// Flat, one character per cell.
impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&LineSpec(self.0.clone()), f)
    }
}

/// A sequence of the puzzle: curve index and side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineRef {
    pub curve: usize,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub line: LineRef,
    pub settled: Vec<(usize, CellState)>,
}

/// Steps of one pass that settled at least one cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Round {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub board: Board,
    pub verdict: Verdict,
    pub rounds: Vec<Round>,
    pub warnings: Vec<String>,
    /// Sequence found inconsistent, or that forced the conflicting value.
    pub failed_line: Option<LineRef>,
}

enum Outcome {
    Settled(LineSpec),
    Skipped(String),
    Inconsistent,
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Right => "right",
        Side::Left => "left",
    }
}

struct Lines<'a> {
    puzzle: &'a Puzzle,
    refs: Vec<LineRef>,
    through: Vec<Vec<usize>>,
}

impl<'a> Lines<'a> {
    fn new(puzzle: &'a Puzzle) -> Self {
        let refs: Vec<LineRef> = puzzle
            .sequences()
            .map(|(curve, side, _)| LineRef { curve, side })
            .collect();
        let mut through = vec![Vec::new(); puzzle.cell_count()];
        for (k, (_, _, seq)) in puzzle.sequences().enumerate() {
            for &c in &seq.cells {
                if through[c].last() != Some(&k) {
                    through[c].push(k);
                }
            }
        }
        Lines { puzzle, refs, through }
    }

    fn settle(&self, k: usize, board: &Board, opts: &SolveOptions) -> Result<Outcome, SolveError> {
        let r = self.refs[k];
        let curve = &self.puzzle.curves()[r.curve];
        let seq = curve.sequence(r.side);
        let problem = board.line(&seq.cells, &seq.desc);
        let method = match (opts.line_method, classify_line(&seq.cells)) {
            (LineMethod::Oracle, _) => LineMethod::Oracle,
            (_, Difficulty::Expert) if opts.expert_fallback => LineMethod::Oracle,
            (_, Difficulty::Expert) => {
                return Err(SolveError::ExpertLine {
                    curve: curve.name.clone(),
                    side: side_name(r.side),
                })
            }
            (LineMethod::BasicFast, Difficulty::Advanced) => LineMethod::Dp,
            (m, _) => m,
        };
        match settle_with(&problem, method, opts.oracle_bound) {
            Ok(spec) => Ok(Outcome::Settled(spec)),
            Err(LineError::Inconsistent) => Ok(Outcome::Inconsistent),
            Err(LineError::OracleBound { faces, bound }) => Ok(Outcome::Skipped(format!(
                "skipped {} sequence of curve {:?}: {faces} unsettled faces exceed oracle bound {bound}",
                side_name(r.side),
                curve.name
            ))),
            Err(e) => Err(e.into()),
        }
    }
}

/// Applies a settled spec to the board. Returns the newly settled cells, or
/// the conflicting cell id.
fn apply(
    board: &mut Board,
    cells: &[usize],
    spec: &LineSpec,
) -> Result<Vec<(usize, CellState)>, usize> {
    let mut changed = Vec::new();
    for (&id, &v) in cells.iter().zip(spec.cells()) {
        if !v.is_settled() {
            continue;
        }
        match board.0[id] {
            CellState::Unsettled => {
                board.0[id] = v;
                changed.push((id, v));
            }
            current if current != v => return Err(id),
            _ => {}
        }
    }
    Ok(changed)
}

/// Runs the settle fixpoint on `p` (prefills applied).
pub fn full_settle(p: &Puzzle, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let lines = Lines::new(p);
    let n = lines.refs.len();
    let order: Vec<usize> = match &opts.order {
        Some(order) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(SolveError::BadOrder(n));
            }
            order.clone()
        }
        None => (0..n).collect(),
    };
    let mut board = Board(p.initial_cells());
    let mut dirty = vec![true; n];
    let mut rounds = Vec::new();
    let mut warnings = Vec::new();

    let finish = |board: Board, verdict, rounds, warnings, failed_line| SolveReport {
        board,
        verdict,
        rounds,
        warnings,
        failed_line,
    };

    loop {
        let batch: Vec<usize> = order.iter().copied().filter(|&k| dirty[k]).collect();
        if batch.is_empty() {
            break;
        }
        let mut round = Round::default();
        let results: Vec<(usize, Outcome)> = if opts.parallel {
            for &k in &batch {
                dirty[k] = false;
            }
            let snapshot = &board;
            batch
                .par_iter()
                .map(|&k| lines.settle(k, snapshot, opts).map(|o| (k, o)))
                .collect::<Result<_, _>>()?
        } else {
            Vec::new()
        };

        let mut pending = results.into_iter();
        for &k in &batch {
            let outcome = if opts.parallel {
                pending.next().expect("one result per batch entry").1
            } else {
                if !dirty[k] {
                    continue;
                }
                dirty[k] = false;
                lines.settle(k, &board, opts)?
            };
            let r = lines.refs[k];
            let cells = &p.curves()[r.curve].sequence(r.side).cells;
            match outcome {
                Outcome::Skipped(w) => warnings.push(w),
                Outcome::Inconsistent => {
                    rounds.push(round);
                    return Ok(finish(board, Verdict::LineInconsistent, rounds, warnings, Some(r)));
                }
                Outcome::Settled(spec) => match apply(&mut board, cells, &spec) {
                    Err(_) => {
                        rounds.push(round);
                        return Ok(finish(board, Verdict::CellConflict, rounds, warnings, Some(r)));
                    }
                    Ok(changed) if changed.is_empty() => {}
                    Ok(changed) => {
                        for &(id, _) in &changed {
                            for &other in &lines.through[id] {
                                if other != k {
                                    dirty[other] = true;
                                }
                            }
                        }
                        round.steps.push(Step {
                            line: r,
                            settled: changed,
                        });
                    }
                },
            }
        }
        if !round.steps.is_empty() {
            rounds.push(round);
        }
    }

    let verdict = if board.is_solved() {
        Verdict::SolvedSimple
    } else {
        Verdict::Stuck
    };
    Ok(finish(board, verdict, rounds, warnings, None))
}

/// Whether the settle fixpoint alone solves the puzzle.
pub fn is_simple(p: &Puzzle, opts: &SolveOptions) -> Result<bool, SolveError> {
    Ok(full_settle(p, opts)?.verdict == Verdict::SolvedSimple)
}
