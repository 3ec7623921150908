//! Exhaustive ground truth for lines and whole puzzles.
//!
//! Line enumeration runs over faces rather than positions: a line with
//! letters `abba` has two unsettled faces and four candidate fixes.

use std::collections::BTreeSet;

use crate::error::LineError;
use crate::model::{fix_consistent, CellState, LineProblem, LineSpec, Puzzle, Sequence};

/// Default cap on the number of unsettled faces (or puzzle cells) enumerated.
pub const DEFAULT_BOUND: usize = 22;

fn check_bound(faces: usize, bound: usize) -> Result<(), LineError> {
    if faces > bound || faces >= usize::BITS as usize {
        return Err(LineError::OracleBound { faces, bound });
    }
    Ok(())
}

/// Every fix refining the spec, respecting the letters and matching the
/// description.
pub fn oracle_line_fixes(p: &LineProblem, bound: usize) -> Result<BTreeSet<LineSpec>, LineError> {
    let faces = p.unsettled_faces();
    check_bound(faces.len(), bound)?;
    let slot: std::collections::HashMap<usize, usize> =
        faces.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let mut fixes = BTreeSet::new();
    for mask in 0usize..(1 << faces.len()) {
        let cells = p
            .spec()
            .cells()
            .iter()
            .zip(p.letters())
            .map(|(&c, f)| match c {
                CellState::Unsettled => CellState::from_bool(mask >> slot[f] & 1 == 1),
                settled => settled,
            })
            .collect();
        let fix = LineSpec(cells);
        if fix_consistent(&fix, p.desc())? {
            fixes.insert(fix);
        }
    }
    Ok(fixes)
}

/// Per-position intersection of all consistent fixes.
pub fn oracle_settle(p: &LineProblem, bound: usize) -> Result<LineSpec, LineError> {
    let fixes = oracle_line_fixes(p, bound)?;
    let mut iter = fixes.iter();
    let first = iter.next().ok_or(LineError::Inconsistent)?;
    let mut out = first.clone();
    for fix in iter {
        for (o, &c) in out.0.iter_mut().zip(fix.cells()) {
            if *o != c {
                *o = CellState::Unsettled;
            }
        }
    }
    Ok(out)
}

/// Block structure of a sequence read up to its first unsettled cell.
/// With no unsettled cell this is an exact consistency check; otherwise it
/// only rejects prefixes whose closed blocks already contradict the clues.
fn prefix_feasible(seq: &Sequence, board: &[CellState]) -> bool {
    let clues = seq.desc.clues();
    let mut closed = 0;
    let mut run = 0;
    for &id in &seq.cells {
        match board[id] {
            CellState::Filled => {
                run += 1;
                if closed >= clues.len() || run > clues[closed] {
                    return false;
                }
            }
            CellState::Empty => {
                if run > 0 {
                    if run != clues[closed] {
                        return false;
                    }
                    closed += 1;
                    run = 0;
                }
            }
            CellState::Unsettled => return true,
        }
    }
    if run > 0 {
        if run != clues[closed] {
            return false;
        }
        closed += 1;
    }
    closed == clues.len()
}

/// All total fills of the puzzle's unsettled cells under which every
/// sequence matches its description, in lexicographic order (`0 < 1`).
pub fn oracle_puzzle_solutions(p: &Puzzle, bound: usize) -> Result<Vec<Vec<CellState>>, LineError> {
    let mut board = p.initial_cells();
    let free: Vec<usize> = (0..board.len()).filter(|&c| !board[c].is_settled()).collect();
    check_bound(free.len(), bound)?;

    let seqs: Vec<&Sequence> = p.sequences().map(|(_, _, s)| s).collect();
    let mut touching = vec![Vec::new(); board.len()];
    for (k, s) in seqs.iter().enumerate() {
        for &c in &s.cells {
            if touching[c].last() != Some(&k) {
                touching[c].push(k);
            }
        }
    }
    let mut solutions = Vec::new();
    let settled_ok = seqs
        .iter()
        .filter(|s| s.cells.iter().all(|&c| board[c].is_settled()))
        .all(|s| prefix_feasible(s, &board));
    if settled_ok {
        search(0, &free, &seqs, &touching, &mut board, &mut solutions);
    }
    Ok(solutions)
}

fn search(
    depth: usize,
    free: &[usize],
    seqs: &[&Sequence],
    touching: &[Vec<usize>],
    board: &mut [CellState],
    out: &mut Vec<Vec<CellState>>,
) {
    let Some(&cell) = free.get(depth) else {
        out.push(board.to_vec());
        return;
    };
    for value in [CellState::Empty, CellState::Filled] {
        board[cell] = value;
        if touching[cell].iter().all(|&k| prefix_feasible(seqs[k], board)) {
            search(depth + 1, free, seqs, touching, board, out);
        }
    }
    board[cell] = CellState::Unsettled;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classic_to_puzzle, ClassicNonogram, Description};

    fn line(spec: &str, letters: &str, desc: &str) -> LineProblem {
        LineProblem::from_strs(spec, letters, desc).unwrap()
    }

    fn strings(set: &BTreeSet<LineSpec>) -> Vec<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn line_fix_examples() {
        assert_eq!(strings(&oracle_line_fixes(&line("????", "abba", "2"), DEFAULT_BOUND).unwrap()), ["0110"]);
        assert_eq!(strings(&oracle_line_fixes(&line("??", "ab", "-"), DEFAULT_BOUND).unwrap()), ["00"]);
        assert!(oracle_line_fixes(&line("?", "a", "2"), DEFAULT_BOUND).unwrap().is_empty());
    }

    #[test]
    fn settle_examples() {
        let s = |p: LineProblem| oracle_settle(&p, DEFAULT_BOUND).map(|s| s.to_string());
        assert_eq!(s(line("????", "abba", "2")).unwrap(), "0110");
        assert_eq!(s(line("???", "abc", "1")).unwrap(), "???");
        assert_eq!(s(line("00", "ab", "1")).unwrap_err(), LineError::Inconsistent);
    }

    #[test]
    fn bound_is_enforced() {
        let p = LineProblem::distinct(LineSpec::unsettled(5), Description::empty());
        assert_eq!(
            oracle_line_fixes(&p, 4).unwrap_err(),
            LineError::OracleBound { faces: 5, bound: 4 }
        );
        // five positions, two faces
        let p = line("?????", "aabbb", "-");
        assert!(oracle_line_fixes(&p, 2).is_ok());
    }

    fn classic(rows: &[&str], cols: &[&str]) -> Puzzle {
        let d = |s: &&str| s.parse::<Description>().unwrap();
        classic_to_puzzle(&ClassicNonogram::new(rows.iter().map(d).collect(), cols.iter().map(d).collect()).unwrap())
    }

    fn render(sol: &[CellState]) -> String {
        LineSpec(sol.to_vec()).to_string()
    }

    #[test]
    fn puzzle_solution_examples() {
        let one = oracle_puzzle_solutions(&classic(&["1"], &["1"]), DEFAULT_BOUND).unwrap();
        assert_eq!(one.iter().map(|s| render(s)).collect::<Vec<_>>(), ["1"]);

        let diag = oracle_puzzle_solutions(&classic(&["1", "1"], &["1", "1"]), DEFAULT_BOUND).unwrap();
        assert_eq!(diag.iter().map(|s| render(s)).collect::<Vec<_>>(), ["0110", "1001"]);

        let top = oracle_puzzle_solutions(&classic(&["2", "-"], &["1", "1"]), DEFAULT_BOUND).unwrap();
        assert_eq!(top.iter().map(|s| render(s)).collect::<Vec<_>>(), ["1100"]);
    }

    /// Plain enumeration over all fills, no pruning.
    fn unpruned_count(p: &Puzzle) -> usize {
        let n = p.cell_count();
        (0usize..1 << n)
            .filter(|mask| {
                let fix: Vec<CellState> = (0..n).map(|c| CellState::from_bool(mask >> c & 1 == 1)).collect();
                p.sequences().all(|(_, _, s)| {
                    let cells = LineSpec(s.cells.iter().map(|&c| fix[c]).collect());
                    fix_consistent(&cells, &s.desc).unwrap()
                })
            })
            .count()
    }

    #[test]
    fn pruning_does_not_lose_solutions() {
        for seed in 0u64..40 {
            let (w, h) = (3, 3);
            let grid: Vec<bool> = (0..9).map(|i| (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> (i * 5)) & 1 == 1).collect();
            let p = classic_to_puzzle(&ClassicNonogram::from_grid(w, h, &grid));
            assert_eq!(oracle_puzzle_solutions(&p, DEFAULT_BOUND).unwrap().len(), unpruned_count(&p));
        }
    }

    #[test]
    fn fully_unsettled_counts_match_stars_and_bars() {
        // placements of t blocks in length l: C(l - sum + 1, t)
        fn binom(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for l in 0..=10 {
            for clues in [vec![], vec![1], vec![2, 1], vec![1, 1, 1], vec![3, 2]] {
                let d = Description::new(clues.clone()).unwrap();
                let p = LineProblem::distinct(LineSpec::unsettled(l), d.clone());
                let sum: usize = clues.iter().sum();
                let expected = if l + 1 < sum { 0 } else { binom(l + 1 - sum, clues.len()) };
                assert_eq!(oracle_line_fixes(&p, DEFAULT_BOUND).unwrap().len(), expected, "{l} {clues:?}");
            }
        }
    }
}
