//! The degenerate tree of an all-distinct line is a left comb, so only the
//! prefix intervals `0..=j` ever occur as inner nodes. Tracking, for every
//! prefix, which description symbol its last cell can carry (and the same for
//! suffixes) is enough to settle the line in `O(l * m)`.

use std::collections::HashSet;

use super::{pad_line, translate_description};
use crate::error::LineError;
use crate::model::{CellState, LineProblem, LineSpec};

pub fn settle_basic_fast(p: &LineProblem) -> Result<LineSpec, LineError> {
    let mut seen = HashSet::new();
    if !p.letters().iter().all(|l| seen.insert(l)) {
        return Err(LineError::RepeatedLetters);
    }
    let padded = pad_line(p);
    let spec = padded.spec().cells();
    let symbols = translate_description(p.desc()).symbols().to_vec();
    let (l, m) = (spec.len(), symbols.len());
    let fits = |j: usize, i: usize| match spec[j] {
        CellState::Unsettled => true,
        CellState::Filled => symbols[i],
        CellState::Empty => !symbols[i],
    };

    // forward[j][i]: cells 0..=j spell symbols 0..=i with cell j on symbol i
    let mut forward = vec![vec![false; m]; l];
    forward[0][0] = fits(0, 0);
    for j in 1..l {
        for i in 0..m {
            let stay = !symbols[i] && forward[j - 1][i];
            let step = i > 0 && forward[j - 1][i - 1];
            forward[j][i] = fits(j, i) && (stay || step);
        }
    }
    // backward[j][i]: cells j..l spell symbols i..m with cell j on symbol i
    let mut backward = vec![vec![false; m]; l];
    backward[l - 1][m - 1] = fits(l - 1, m - 1);
    for j in (0..l - 1).rev() {
        for i in 0..m {
            let stay = !symbols[i] && backward[j + 1][i];
            let step = i + 1 < m && backward[j + 1][i + 1];
            backward[j][i] = fits(j, i) && (stay || step);
        }
    }
    if !forward[l - 1][m - 1] {
        return Err(LineError::Inconsistent);
    }

    let mut out = p.spec().clone();
    for (k, cell) in out.0.iter_mut().enumerate() {
        if cell.is_settled() {
            continue;
        }
        let j = k + 1;
        let (mut can_empty, mut can_fill) = (false, false);
        for i in 0..m {
            if forward[j][i] && backward[j][i] {
                if symbols[i] {
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
    Ok(out)
}
