//! Bottom-up consistency table and top-down extensibility settle.
//!
//! Entry `(node, i, i2)` says whether the cells of the node's interval can be
//! fixed so that they spell description symbols `i..=i2`, with the first and
//! last cell of the interval aligned to symbols `i` and `i2` and every `0`
//! symbol covering one or more empty cells. A join of `left` and `right` is
//! true for `(i, i2)` if, for some `i1`,
//!
//! * `left` spells `i..=i1` and `right` spells `i1+1..=i2`, or
//! * `a[i1] = 0`, `left` spells `i..=i1` and `right` spells `i1..=i2`
//!   (the run of zeros continues across the split),
//!
//! and, on joins flagged `needs_color_match`, `a[i1] = a[i2]`: the two
//! symbols sit on consecutive occurrences of one face.
//!
//! Rows are stored as bitsets over `i2`, one row per `(node, i)`.

use super::bits::{full_mask, is_zero, ones, or_and, or_and3, BitTable};
use super::{pad_line, translate_description, DecompositionTree, NodeKind};
use crate::error::LineError;
use crate::model::{CellState, LineProblem, LineSpec};

/// Filled consistency table for one line.
#[derive(Clone, Debug)]
pub struct LineTable {
    spec: Vec<CellState>,
    symbols: Vec<bool>,
    tree: DecompositionTree,
    table: BitTable,
    masks: Masks,
}

#[derive(Clone, Debug)]
struct Masks {
    all: Vec<u64>,
    zero: Vec<u64>,
    one: Vec<u64>,
}

impl Masks {
    fn new(symbols: &[bool], words: usize) -> Self {
        let all = full_mask(symbols.len(), words);
        let mut one = vec![0u64; words];
        for (i, _) in symbols.iter().enumerate().filter(|(_, &s)| s) {
            one[i / 64] |= 1 << (i % 64);
        }
        let zero = all.iter().zip(&one).map(|(a, o)| a & !o).collect();
        Masks { all, zero, one }
    }

    fn for_join(&self, needs_color_match: bool, symbol: bool) -> &[u64] {
        match (needs_color_match, symbol) {
            (false, _) => &self.all,
            (true, true) => &self.one,
            (true, false) => &self.zero,
        }
    }
}

fn compatible(cell: CellState, symbol: bool) -> bool {
    match cell {
        CellState::Unsettled => true,
        CellState::Filled => symbol,
        CellState::Empty => !symbol,
    }
}

impl LineTable {
    pub fn build(p: &LineProblem) -> Result<Self, LineError> {
        let padded = pad_line(p);
        let symbols = translate_description(p.desc()).symbols().to_vec();
        let tree = DecompositionTree::build(padded.letters())?;
        let m = symbols.len();
        let mut table = BitTable::new(tree.len() * m, m);
        let words = table.words();
        let masks = Masks::new(&symbols, words);
        let spec = padded.spec().cells().to_vec();

        for (id, node) in tree.nodes().iter().enumerate() {
            match node.kind {
                NodeKind::Leaf => {
                    for (i, &s) in symbols.iter().enumerate() {
                        if compatible(spec[node.start], s) {
                            table.set(id * m + i, i);
                        }
                    }
                }
                NodeKind::Join {
                    left,
                    right,
                    needs_color_match,
                } => {
                    let (done, rest) = table.split_at_row_mut(id * m);
                    let row = |r: usize| &done[r * words..(r + 1) * words];
                    for i in 0..m {
                        let out = &mut rest[i * words..(i + 1) * words];
                        for i1 in ones(row(left * m + i)) {
                            let mask = masks.for_join(needs_color_match, symbols[i1]);
                            if i1 + 1 < m {
                                or_and(out, row(right * m + i1 + 1), mask);
                            }
                            if !symbols[i1] {
                                or_and(out, row(right * m + i1), mask);
                            }
                        }
                    }
                }
            }
        }
        Ok(LineTable {
            spec,
            symbols,
            tree,
            table,
            masks,
        })
    }

    pub fn tree(&self) -> &DecompositionTree {
        &self.tree
    }

    /// Length of the description's 0-1 string.
    pub fn desc_len(&self) -> usize {
        self.symbols.len()
    }

    /// Number of `(i, i2, node)` subproblems with `i <= i2`.
    pub fn subproblem_count(&self) -> usize {
        let m = self.symbols.len();
        self.tree.len() * m * (m + 1) / 2
    }

    /// Value of subproblem `(i..=i2, node)`.
    pub fn entry(&self, node: usize, i: usize, i2: usize) -> bool {
        self.table.get(node * self.symbols.len() + i, i2)
    }

    pub fn is_consistent(&self) -> bool {
        let root = self.tree.root().expect("padded lines are never empty");
        self.entry(root, 0, self.symbols.len() - 1)
    }

    /// Marks every subproblem reachable from the target through a satisfied
    /// clause, then settles each unsettled cell whose extensible singleton
    /// entries all carry the same symbol.
    pub fn settle(&self) -> Result<LineSpec, LineError> {
        if !self.is_consistent() {
            return Err(LineError::Inconsistent);
        }
        let m = self.symbols.len();
        let words = self.table.words();
        let mut ext = BitTable::new(self.tree.len() * m, m);
        let root = self.tree.root().expect("padded lines are never empty");
        ext.set(root * m, m - 1);

        for (id, node) in self.tree.nodes().iter().enumerate().rev() {
            let NodeKind::Join {
                left,
                right,
                needs_color_match,
            } = node.kind
            else {
                continue;
            };
            let (lower, upper) = ext.split_at_row_mut(id * m);
            for i in 0..m {
                let parent = &upper[i * words..(i + 1) * words];
                if is_zero(parent) {
                    continue;
                }
                for i1 in ones(self.table.row(left * m + i)) {
                    let mask = self.masks.for_join(needs_color_match, self.symbols[i1]);
                    let mut hit = false;
                    if i1 + 1 < m {
                        let r = right * m + i1 + 1;
                        hit |= or_and3(&mut lower[r * words..(r + 1) * words], self.table.row(r), parent, mask);
                    }
                    if !self.symbols[i1] {
                        let r = right * m + i1;
                        hit |= or_and3(&mut lower[r * words..(r + 1) * words], self.table.row(r), parent, mask);
                    }
                    if hit {
                        let r = left * m + i;
                        lower[r * words + i1 / 64] |= 1 << (i1 % 64);
                    }
                }
            }
        }

        let len = self.spec.len() - 2;
        let mut out = self.spec[1..=len].to_vec();
        for (j, cell) in out.iter_mut().enumerate() {
            if cell.is_settled() {
                continue;
            }
            let leaf = self.tree.leaf(j + 1);
            let (mut can_empty, mut can_fill) = (false, false);
            for (i, &s) in self.symbols.iter().enumerate() {
                if ext.get(leaf * m + i, i) {
                    if s {
                        can_fill = true;
                    } else {
                        can_empty = true;
                    }
                }
            }
            *cell = match (can_empty, can_fill) {
                (true, false) => CellState::Empty,
                (false, true) => CellState::Filled,
                _ => CellState::Unsettled,
            };
        }
        Ok(LineSpec(out))
    }
}

/// Whether some fix of `p`'s spec respecting its letters matches its
/// description. The letters must be nested.
pub fn check_consistency(p: &LineProblem) -> Result<bool, LineError> {
    Ok(LineTable::build(p)?.is_consistent())
}

/// Settles every cell that is constant over all consistent fixes.
pub fn settle_topdown(p: &LineProblem) -> Result<LineSpec, LineError> {
    LineTable::build(p)?.settle()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(spec: &str, letters: &str, desc: &str) -> LineProblem {
        LineProblem::from_strs(spec, letters, desc).unwrap()
    }

    fn distinct(spec: &str, desc: &str) -> LineProblem {
        LineProblem::distinct(spec.parse().unwrap(), desc.parse().unwrap())
    }

    #[test]
    fn consistency_examples() {
        assert!(check_consistency(&distinct("0???1???10??1??0?0", "5-1-2")).unwrap());
        assert!(!check_consistency(&line("??", "aa", "1")).unwrap());
        assert!(check_consistency(&line("????", "abba", "2")).unwrap());
        assert!(check_consistency(&line("", "", "-")).unwrap());
        assert!(!check_consistency(&line("", "", "1")).unwrap());
        assert!(!check_consistency(&line("?", "a", "2")).unwrap());
        assert!(check_consistency(&line("??", "aa", "2")).unwrap());
    }

    #[test]
    fn crossing_letters_are_rejected() {
        assert_eq!(
            check_consistency(&line("????", "abab", "1")).unwrap_err(),
            LineError::NotNested
        );
    }

    #[test]
    fn settle_examples() {
        let s = |p: LineProblem| settle_topdown(&p).unwrap().to_string();
        assert_eq!(s(line("????", "abba", "2")), "0110");
        assert_eq!(s(line("??", "ab", "2")), "11");
        assert_eq!(s(line("?1?", "abc", "1")), "010");
        assert_eq!(s(line("?", "a", "-")), "0");
        assert_eq!(s(line("???", "abc", "1")), "???");
        assert_eq!(s(distinct("?????", "4")), "?111?");
    }

    #[test]
    fn settle_reports_inconsistency() {
        assert_eq!(
            settle_topdown(&line("00", "ab", "1")).unwrap_err(),
            LineError::Inconsistent
        );
    }

    #[test]
    fn long_mixed_spec_settles_to_fix_intersection() {
        // Five placements of 5-1-2 fit; they agree on three unsettled cells.
        let p = distinct("0???1???10??1??0?0", "5-1-2");
        assert_eq!(settle_topdown(&p).unwrap().to_string(), "0???11??10??1?0000");
    }

    #[test]
    fn table_dimensions() {
        let t = LineTable::build(&distinct("?????", "2-1")).unwrap();
        assert_eq!(t.tree().len(), 2 * 7 - 1);
        assert_eq!(t.desc_len(), 6);
        assert_eq!(t.subproblem_count(), 13 * 21);
    }
}
