//! Classic nonogram to expert curved nonogram.
//!
//! The input is padded to `w = h + 1` and ringed by one empty border, giving
//! `w + 2` inner columns and `h + 2` inner rows. A single vital sequence then
//! visits `Col 0, Row 0, Col 1, Row 1, ..., Row h+1, Col w+1`, columns top to
//! bottom and rows left to right, so every inner cell occurs twice. Between
//! consecutive segments sits a run of `4k - 1` fresh filled blocker cells, and
//! `k + 1` blocker cells open and close the sequence, where
//! `k = 1 + max(w / 2, h / 2)`. The vital description interleaves the same
//! way: `k+1, seg, 4k-1, seg, ..., seg, k+1`. A blocker clue is longer than
//! any segment, so blocker clues can only land on blocker runs and each
//! segment must realize exactly its own row or column description.
//!
//! In core mode the border and blocker cells are prefilled. Full mode leaves
//! them open and adds `4(k + 1)` boundary curves whose one- and two-clue
//! descriptions force them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::ReductionError;
use crate::line::LineMethod;
use crate::model::{
    classic_to_puzzle, classify_puzzle, CellState, ClassicNonogram, Curve, Description, Difficulty, Puzzle,
    Sequence,
};
use crate::oracle::oracle_puzzle_solutions;
use crate::solver::{full_settle, SolveOptions, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Core,
    Full,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(Mode::Core),
            "full" => Ok(Mode::Full),
            _ => Err(format!("unknown mode {s:?} (expected core or full)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Core => "core",
            Mode::Full => "full",
        })
    }
}

/// An inner row or column, in coordinates of the bordered grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentRef {
    Row(usize),
    Col(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    Blocker { clue: usize },
    Segment { line: SegmentRef, desc: Description },
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Blocker { clue } => write!(f, "blocker {clue}"),
            Part::Segment {
                line: SegmentRef::Row(r),
                desc,
            } => write!(f, "row {r} {desc}"),
            Part::Segment {
                line: SegmentRef::Col(c),
                desc,
            } => write!(f, "col {c} {desc}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub puzzle: Puzzle,
    pub mode: Mode,
    pub pad_k: usize,
    /// The input after padding to `w = h + 1`.
    pub padded: ClassicNonogram,
    /// `(row, col)` of the input to global cell id.
    pub original_map: BTreeMap<(usize, usize), usize>,
    pub part_layout: Vec<Part>,
    /// Blocker cell runs in vital order, one per blocker part.
    pub blocker_runs: Vec<Vec<usize>>,
}

impl ReductionOutput {
    pub fn vital(&self) -> &Curve {
        &self.puzzle.curves()[0]
    }

    /// Sidecar lines (without the leading `# `) describing the layout.
    pub fn metadata_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("mode {}", self.mode),
            format!("pad_k {}", self.pad_k),
            format!("padded {} {}", self.padded.width(), self.padded.height()),
        ];
        out.extend(self.part_layout.iter().enumerate().map(|(i, p)| format!("part {i} {p}")));
        out.extend(self.original_map.iter().map(|((r, c), id)| format!("orig {r} {c} {id}")));
        out
    }
}

pub fn pad_k(w: usize, h: usize) -> usize {
    1 + (w / 2).max(h / 2)
}

/// Appends empty columns (or rows) until `w = h + 1`.
pub fn pad_to_w_eq_h_plus_1(n: &ClassicNonogram) -> ClassicNonogram {
    let (w, h) = (n.width(), n.height());
    let mut rows = n.rows().to_vec();
    let mut cols = n.cols().to_vec();
    if w < h + 1 {
        cols.resize(h + 1, Description::empty());
    } else if w > h + 1 {
        rows.resize(w - 1, Description::empty());
    }
    ClassicNonogram::new(rows, cols).expect("empty lines always fit")
}

pub fn reduce(n: &ClassicNonogram, mode: Mode) -> ReductionOutput {
    let padded = pad_to_w_eq_h_plus_1(n);
    let (w, h) = (padded.width(), padded.height());
    let k = pad_k(w, h);
    let (iw, ih) = (w + 2, h + 2);
    let inner = |r: usize, c: usize| r * iw + c;
    let mut next_id = iw * ih;

    let mut segments = Vec::with_capacity(iw + ih);
    for j in 0..ih {
        segments.push(SegmentRef::Col(j));
        segments.push(SegmentRef::Row(j));
    }
    segments.push(SegmentRef::Col(ih));
    debug_assert_eq!(ih, w + 1);

    let segment_desc = |s: SegmentRef| match s {
        SegmentRef::Col(c) if (1..=w).contains(&c) => padded.cols()[c - 1].clone(),
        SegmentRef::Row(r) if (1..=h).contains(&r) => padded.rows()[r - 1].clone(),
        _ => Description::empty(),
    };
    let segment_cells = |s: SegmentRef| -> Vec<usize> {
        match s {
            SegmentRef::Col(c) => (0..ih).map(|r| inner(r, c)).collect(),
            SegmentRef::Row(r) => (0..iw).map(|c| inner(r, c)).collect(),
        }
    };
    let mut fresh_run = |len: usize| -> Vec<usize> {
        let run = (next_id..next_id + len).collect();
        next_id += len;
        run
    };

    let mut vital_cells = Vec::new();
    let mut part_layout = Vec::with_capacity(2 * segments.len() + 1);
    let mut blocker_runs = Vec::new();
    let mut push_blocker = |len: usize, cells: &mut Vec<usize>, parts: &mut Vec<Part>| {
        let run = fresh_run(len);
        cells.extend_from_slice(&run);
        blocker_runs.push(run);
        parts.push(Part::Blocker { clue: len });
    };
    push_blocker(k + 1, &mut vital_cells, &mut part_layout);
    for (i, &s) in segments.iter().enumerate() {
        vital_cells.extend(segment_cells(s));
        part_layout.push(Part::Segment {
            line: s,
            desc: segment_desc(s),
        });
        let len = if i + 1 == segments.len() { k + 1 } else { 4 * k - 1 };
        push_blocker(len, &mut vital_cells, &mut part_layout);
    }

    let clues: Vec<usize> = part_layout
        .iter()
        .flat_map(|p| match p {
            Part::Blocker { clue } => vec![*clue],
            Part::Segment { desc, .. } => desc.clues().to_vec(),
        })
        .collect();
    let mut curves = vec![Curve {
        name: "vital".into(),
        right: Sequence::new(vital_cells, Description::new(clues).expect("clues are positive")),
        left: Sequence::default(),
    }];

    let border: Vec<usize> = (0..ih)
        .flat_map(|r| (0..iw).map(move |c| (r, c)))
        .filter(|&(r, c)| r == 0 || c == 0 || r == ih - 1 || c == iw - 1)
        .map(|(r, c)| inner(r, c))
        .collect();

    let mut prefills = BTreeMap::new();
    match mode {
        Mode::Core => {
            for &id in &border {
                prefills.insert(id, CellState::Empty);
            }
            for &id in blocker_runs.iter().flatten() {
                prefills.insert(id, CellState::Filled);
            }
        }
        Mode::Full => curves.extend(boundary_curves(k, &blocker_runs, &border)),
    }

    let original_map = (0..n.height())
        .flat_map(|r| (0..n.width()).map(move |c| ((r, c), inner(r + 1, c + 1))))
        .collect();
    let puzzle = Puzzle::new(next_id, curves, prefills).expect("all ids allocated above");
    ReductionOutput {
        puzzle,
        mode,
        pad_k: k,
        padded,
        original_map,
        part_layout,
        blocker_runs,
    }
}

fn fill_sequence(cells: Vec<usize>) -> Sequence {
    let len = cells.len();
    Sequence::new(cells, Description::new(vec![len]).expect("runs are nonempty"))
}

/// `4(k + 1)` curves. Right sides cover the blocker runs with a single clue
/// spanning the whole side. Left sides hold chunks of the empty border between
/// the first and the last run, with the two-clue description `k+1, k+1`.
fn boundary_curves(k: usize, runs: &[Vec<usize>], border: &[usize]) -> Vec<Curve> {
    let count = 4 * (k + 1);
    let groups = count.min(border.len());
    let (first, last) = (&runs[0], &runs[runs.len() - 1]);
    (0..count)
        .map(|b| {
            let mut right: Vec<usize> = runs.iter().skip(b).step_by(count).flatten().copied().collect();
            if right.is_empty() {
                right = runs[b % runs.len()].clone();
            }
            let left = if b < groups {
                let lo = b * border.len() / groups;
                let hi = (b + 1) * border.len() / groups;
                let mut cells = first.clone();
                cells.extend_from_slice(&border[lo..hi]);
                cells.extend_from_slice(last);
                Sequence::new(cells, Description::new(vec![k + 1, k + 1]).expect("positive"))
            } else {
                fill_sequence(runs[(b + 1) % runs.len()].clone())
            };
            Curve {
                name: format!("b{b}"),
                right: fill_sequence(right),
                left,
            }
        })
        .collect()
}

/// Blocker clues exceed every segment length, so no blocker fits inside one.
pub fn blockers_exceed_segments(w: usize, h: usize) -> bool {
    4 * pad_k(w, h) - 1 > w.max(h) + 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.is_ok())
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter_map(|c| c.outcome.as_ref().err().map(|e| format!("{}: {e}", c.name)))
            .collect()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_structure(r: &ReductionOutput) -> Result<(), String> {
    let (w, h) = (r.padded.width(), r.padded.height());
    let k = r.pad_k;
    ensure(w == h + 1, || format!("padded size {w}x{h} is not w = h + 1"))?;
    ensure(k == pad_k(w, h), || format!("pad_k {k} != 1 + max(w/2, h/2)"))?;
    let parts = &r.part_layout;
    ensure(parts.len() == 2 * (w + h + 4) + 1, || format!("{} parts", parts.len()))?;
    for (i, p) in parts.iter().enumerate() {
        let expect_blocker = i % 2 == 0;
        match p {
            Part::Blocker { clue } => {
                ensure(expect_blocker, || format!("part {i} should be a segment"))?;
                let want = if i == 0 || i + 1 == parts.len() { k + 1 } else { 4 * k - 1 };
                ensure(*clue == want, || format!("blocker {i} has clue {clue}, expected {want}"))?;
            }
            Part::Segment { .. } => ensure(!expect_blocker, || format!("part {i} should be a blocker"))?,
        }
    }
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    for p in parts {
        match p {
            Part::Segment {
                line: SegmentRef::Row(x),
                ..
            } => ensure(rows.insert(*x), || format!("row {x} visited twice"))?,
            Part::Segment {
                line: SegmentRef::Col(x),
                ..
            } => ensure(cols.insert(*x), || format!("col {x} visited twice"))?,
            Part::Blocker { .. } => {}
        }
    }
    ensure(rows.len() == h + 2 && cols.len() == w + 2, || "segments miss an inner line".into())?;

    let rendered: Vec<usize> = parts
        .iter()
        .flat_map(|p| match p {
            Part::Blocker { clue } => vec![*clue],
            Part::Segment { desc, .. } => desc.clues().to_vec(),
        })
        .collect();
    ensure(r.vital().right.desc.clues() == rendered.as_slice(), || {
        "vital description differs from the part layout".into()
    })?;

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &r.vital().right.cells {
        *counts.entry(c).or_default() += 1;
    }
    let inner_cells = (w + 2) * (h + 2);
    for (&c, &n) in &counts {
        let want = if c < inner_cells { 2 } else { 1 };
        ensure(n == want, || format!("cell {c} occurs {n} times in the vital sequence"))?;
    }

    match r.mode {
        Mode::Core => ensure(r.puzzle.curves().len() == 1, || "core mode has extra curves".into()),
        Mode::Full => {
            ensure(r.puzzle.curves().len() == 4 * k + 5, || {
                format!("{} curves, expected {}", r.puzzle.curves().len(), 4 * k + 5)
            })?;
            for c in &r.puzzle.curves()[1..] {
                for s in [&c.right, &c.left] {
                    ensure((1..=2).contains(&s.desc.len()), || {
                        format!("boundary curve {} has a description of length {}", c.name, s.desc.len())
                    })?;
                }
            }
            Ok(())
        }
    }
}

/// Board once the padding cells are settled: the prefills in core mode, and
/// a settle fixpoint over the boundary curves alone in full mode.
fn trivially_settled(r: &ReductionOutput) -> Result<Vec<CellState>, ReductionError> {
    match r.mode {
        Mode::Core => Ok(r.puzzle.initial_cells()),
        Mode::Full => {
            let boundary = Puzzle::new(
                r.puzzle.cell_count(),
                r.puzzle.curves()[1..].to_vec(),
                r.puzzle.prefills().clone(),
            )
            .expect("same cells");
            Ok(full_settle(&boundary, &SolveOptions::with_method(LineMethod::Dp))?
                .board
                .cells()
                .to_vec())
        }
    }
}

/// Checks the construction against `n`: layout invariants, that only
/// original cells remain open once padding is settled, that the settle
/// fixpoint solves the output, that the solution restricted to the original
/// cells is `n`'s unique solution, and that the output is expert-class when
/// `n` is at least 2x2.
pub fn verify_reduction(
    r: &ReductionOutput,
    n: &ClassicNonogram,
    oracle_bound: usize,
) -> Result<VerifyReport, ReductionError> {
    let solutions = oracle_puzzle_solutions(&classic_to_puzzle(n), oracle_bound)?;
    if solutions.len() != 1 {
        return Err(ReductionError::NotUnique(solutions.len()));
    }
    let solution = &solutions[0];
    let mut checks = Vec::new();

    checks.push(Check {
        name: "structure",
        outcome: check_structure(r),
    });

    let board = trivially_settled(r)?;
    let vital: BTreeSet<usize> = r.vital().right.cells.iter().copied().collect();
    let iw = r.padded.width() + 2;
    let originals: BTreeSet<usize> = (1..=r.padded.height())
        .flat_map(|row| (1..=r.padded.width()).map(move |c| row * iw + c))
        .collect();
    let open: BTreeSet<usize> = (0..board.len()).filter(|&c| !board[c].is_settled()).collect();
    checks.push(Check {
        name: "open cells are original and vital",
        outcome: ensure(open == originals && open.is_subset(&vital), || {
            format!("{} open cells, {} original cells", open.len(), originals.len())
        }),
    });

    let method = match r.mode {
        Mode::Core => LineMethod::Oracle,
        Mode::Full => LineMethod::Dp,
    };
    let opts = SolveOptions {
        oracle_bound,
        ..SolveOptions::with_method(method)
    };
    let report = full_settle(&r.puzzle, &opts)?;
    checks.push(Check {
        name: "simple",
        outcome: ensure(report.verdict == Verdict::SolvedSimple, || format!("verdict {}", report.verdict)),
    });

    let w = n.width();
    let restricted_ok = r
        .original_map
        .iter()
        .all(|(&(row, col), &id)| report.board.get(id) == solution[row * w + col]);
    checks.push(Check {
        name: "original cells match",
        outcome: ensure(restricted_ok && r.original_map.len() == solution.len(), || {
            "restriction to original cells differs from the unique solution".into()
        }),
    });

    if n.width() >= 2 && n.height() >= 2 {
        let class = classify_puzzle(&r.puzzle);
        checks.push(Check {
            name: "expert",
            outcome: ensure(class == Difficulty::Expert, || format!("classified {class}")),
        });
    }
    Ok(VerifyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_settle, DEFAULT_BOUND};

    fn classic(rows: &[&str], cols: &[&str]) -> ClassicNonogram {
        let d = |s: &&str| s.parse::<Description>().unwrap();
        ClassicNonogram::new(rows.iter().map(d).collect(), cols.iter().map(d).collect()).unwrap()
    }

    fn empty(w: usize, h: usize) -> ClassicNonogram {
        ClassicNonogram::new(vec![Description::empty(); h], vec![Description::empty(); w]).unwrap()
    }

    #[test]
    fn padding_examples() {
        let p = pad_to_w_eq_h_plus_1(&empty(5, 5));
        assert_eq!((p.width(), p.height()), (6, 5));
        let p = pad_to_w_eq_h_plus_1(&empty(3, 2));
        assert_eq!((p.width(), p.height()), (3, 2));
        let p = pad_to_w_eq_h_plus_1(&empty(2, 3));
        assert_eq!((p.width(), p.height()), (4, 3));
        let p = pad_to_w_eq_h_plus_1(&empty(5, 2));
        assert_eq!((p.width(), p.height()), (5, 4));
        assert!(p.rows()[2].is_empty() && p.rows()[3].is_empty());
    }

    #[test]
    fn six_by_five_layout() {
        let r = reduce(&empty(6, 5), Mode::Core);
        assert_eq!(r.pad_k, 4);
        assert_eq!(r.part_layout.len(), 31);
        assert_eq!(r.part_layout[0], Part::Blocker { clue: 5 });
        assert_eq!(r.part_layout[2], Part::Blocker { clue: 15 });
        assert_eq!(r.part_layout[30], Part::Blocker { clue: 5 });
        assert_eq!(check_structure(&r), Ok(()));
        let full = reduce(&empty(6, 5), Mode::Full);
        assert_eq!(full.puzzle.curves().len(), 21);
        assert_eq!(check_structure(&full), Ok(()));
    }

    #[test]
    fn two_by_one_vital_line_settles_to_the_solution() {
        let n = classic(&["2"], &["1", "1"]);
        let r = reduce(&n, Mode::Core);
        assert_eq!(r.pad_k, 2);
        assert!(r.part_layout.contains(&Part::Blocker { clue: 7 }));
        assert_eq!(r.part_layout[0], Part::Blocker { clue: 3 });

        let vital = &r.vital().right;
        let board = crate::solver::Board::new(r.puzzle.initial_cells());
        let settled = oracle_settle(&board.line(&vital.cells, &vital.desc), DEFAULT_BOUND).unwrap();
        for id in r.original_map.values() {
            let pos = vital.cells.iter().position(|c| c == id).unwrap();
            assert_eq!(settled.cells()[pos], CellState::Filled);
        }

        let report = verify_reduction(&r, &n, DEFAULT_BOUND).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn ambiguous_input_is_rejected() {
        let n = classic(&["1", "1"], &["1", "1"]);
        let r = reduce(&n, Mode::Core);
        assert_eq!(verify_reduction(&r, &n, DEFAULT_BOUND).unwrap_err(), ReductionError::NotUnique(2));
    }

    #[test]
    fn degenerate_input_without_rows() {
        let n = ClassicNonogram::new(vec![], vec![Description::empty()]).unwrap();
        let r = reduce(&n, Mode::Core);
        assert_eq!((r.padded.width(), r.padded.height()), (1, 0));
        assert_eq!(r.pad_k, 1);
        assert_eq!(r.part_layout.len(), 11);
        assert!(r.original_map.is_empty());
        let report = verify_reduction(&r, &n, DEFAULT_BOUND).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn full_mode_settles_padding_through_boundary_curves() {
        let n = classic(&["1-1", "2"], &["2", "1", "1"]);
        for mode in [Mode::Core, Mode::Full] {
            let r = reduce(&n, mode);
            let report = verify_reduction(&r, &n, DEFAULT_BOUND).unwrap();
            assert!(report.passed(), "{mode}: {:?}", report.failures());
        }
    }

    #[test]
    fn blocker_arithmetic() {
        for w in 2..=8 {
            assert!(blockers_exceed_segments(w, w - 1), "w = {w}");
        }
        assert!(!blockers_exceed_segments(1, 0));
    }

    #[test]
    fn metadata_mentions_layout() {
        let r = reduce(&classic(&["2"], &["1", "1"]), Mode::Core);
        let meta = r.metadata_lines();
        assert_eq!(meta[1], "pad_k 2");
        assert!(meta.contains(&"part 0 blocker 3".to_string()));
        assert!(meta.contains(&"orig 0 1 6".to_string()));
    }
}
