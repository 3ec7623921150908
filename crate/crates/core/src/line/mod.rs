//! Single-line solving under nested equality constraints.
//!
//! A line is padded with one empty virtual cell at each end, its description
//! is turned into a 0-1 string in which every `0` may stretch over one or
//! more empty cells, and a bottom-up interval DP over a decomposition tree of
//! the positions decides whether some fix of the spec matches that string.
//! A top-down pass over the same table then finds every cell that has the
//! same value in all consistent fixes.

mod basic;
mod bits;
mod decomposition;
mod dp;
mod naive;

use std::fmt;
use std::str::FromStr;

pub use basic::settle_basic_fast;
pub use decomposition::{DecompositionTree, Node, NodeKind};
pub use dp::{check_consistency, settle_topdown, LineTable};
pub use naive::settle_naive;

use crate::error::LineError;
use crate::model::{CellState, Description, LineProblem, LineSpec};
use crate::oracle;

/// Description rendered as a 0-1 string: `0 1^d1 0 1^d2 ... 1^dt 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescString(Vec<bool>);

impl DescString {
    pub fn symbols(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DescString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn translate_description(desc: &Description) -> DescString {
    let mut symbols = Vec::with_capacity(desc.filled_count() + desc.len() + 1);
    symbols.push(false);
    for &d in desc.clues() {
        symbols.extend(std::iter::repeat_n(true, d));
        symbols.push(false);
    }
    DescString(symbols)
}

/// Adds an empty virtual cell with a fresh letter at both ends.
pub fn pad_line(p: &LineProblem) -> LineProblem {
    let fresh = p.letters().iter().max().map_or(0, |&m| m + 1);
    let mut cells = Vec::with_capacity(p.len() + 2);
    cells.push(CellState::Empty);
    cells.extend_from_slice(p.spec().cells());
    cells.push(CellState::Empty);
    let mut letters = Vec::with_capacity(p.len() + 2);
    letters.push(fresh);
    letters.extend_from_slice(p.letters());
    letters.push(fresh + 1);
    LineProblem::new(LineSpec(cells), letters, p.desc().clone())
        .expect("padding keeps the equality constraints")
}

/// Line settling strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineMethod {
    /// Bottom-up table plus top-down extensibility marks.
    Dp,
    /// Prefix/suffix sweep, all-distinct lines only.
    BasicFast,
    /// One consistency check per face and value.
    Naive,
    /// Enumeration of all fixes.
    Oracle,
}

impl FromStr for LineMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dp" => Ok(LineMethod::Dp),
            "basic" | "basic_fast" | "basic-fast" => Ok(LineMethod::BasicFast),
            "naive" => Ok(LineMethod::Naive),
            "oracle" => Ok(LineMethod::Oracle),
            _ => Err(format!("unknown line method {s:?} (expected dp, basic, naive or oracle)")),
        }
    }
}

impl fmt::Display for LineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineMethod::Dp => "dp",
            LineMethod::BasicFast => "basic",
            LineMethod::Naive => "naive",
            LineMethod::Oracle => "oracle",
        })
    }
}

/// Settles `p` with exactly the given method; no fallback.
pub fn settle_with(p: &LineProblem, method: LineMethod, oracle_bound: usize) -> Result<LineSpec, LineError> {
    match method {
        LineMethod::Dp => settle_topdown(p),
        LineMethod::BasicFast => settle_basic_fast(p),
        LineMethod::Naive => settle_naive(p),
        LineMethod::Oracle => oracle::oracle_settle(p, oracle_bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_examples() {
        let d = |s: &str| s.parse::<Description>().unwrap();
        assert_eq!(translate_description(&d("5-1-2")).to_string(), "011111010110");
        assert_eq!(translate_description(&d("-")).to_string(), "0");
        assert_eq!(translate_description(&d("1")).to_string(), "010");
        let long = d("3-3-1-4");
        assert_eq!(
            translate_description(&long).len(),
            long.filled_count() + long.len() + 1
        );
    }

    #[test]
    fn padding_examples() {
        let p = LineProblem::from_strs("?", "a", "1").unwrap();
        let q = pad_line(&p);
        assert_eq!(q.spec().to_string(), "0?0");
        assert_eq!(q.letters()[1], 'a' as usize);
        assert!(q.letters()[0] != q.letters()[1] && q.letters()[2] != q.letters()[1]);
        assert_ne!(q.letters()[0], q.letters()[2]);
        assert_eq!(q.desc(), p.desc());

        let e = pad_line(&LineProblem::from_strs("", "", "-").unwrap());
        assert_eq!(e.spec().to_string(), "00");
        assert_ne!(e.letters()[0], e.letters()[1]);

        let f = pad_line(&LineProblem::from_strs("11", "ab", "2").unwrap());
        assert_eq!(f.spec().to_string(), "0110");
    }

    #[test]
    fn method_names_round_trip() {
        for m in [LineMethod::Dp, LineMethod::BasicFast, LineMethod::Naive, LineMethod::Oracle] {
            assert_eq!(m.to_string().parse::<LineMethod>().unwrap(), m);
        }
        assert!("fast".parse::<LineMethod>().is_err());
    }
}
