//! Seeded random instances for tests, benchmarks and the acceptance suite.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{CellState, ClassicNonogram, Curve, Description, LineProblem, LineSpec, Puzzle, Sequence};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letters {
    Distinct,
    Nested,
    /// Uniform over a small alphabet; usually not nested.
    Any,
}

/// Properly nested letters, numbered from 0 in order of first appearance.
pub fn nested_letters<R: Rng>(rng: &mut R, len: usize) -> Vec<usize> {
    let mut open: Vec<usize> = Vec::new();
    let mut next = 0;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        match rng.gen_range(0..4) {
            0 | 1 if !open.is_empty() => {
                if rng.gen_bool(0.5) && open.len() > 1 {
                    open.pop();
                }
                out.push(*open.last().expect("non-empty"));
            }
            _ => {
                open.push(next);
                out.push(next);
                next += 1;
            }
        }
    }
    out
}

pub fn letters<R: Rng>(rng: &mut R, len: usize, kind: Letters) -> Vec<usize> {
    match kind {
        Letters::Distinct => (0..len).collect(),
        Letters::Nested => nested_letters(rng, len),
        Letters::Any => {
            let alphabet = (len / 2).max(1);
            (0..len).map(|_| rng.gen_range(0..alphabet)).collect()
        }
    }
}

/// Per-face random fix: equal letters get equal values.
fn face_fix<R: Rng>(rng: &mut R, letters: &[usize], density: f64) -> Vec<CellState> {
    let mut value = BTreeMap::new();
    letters
        .iter()
        .map(|&f| *value.entry(f).or_insert_with(|| CellState::from_bool(rng.gen_bool(density))))
        .collect()
}

/// Hides each face of `fix` with probability `hide`.
fn blur<R: Rng>(rng: &mut R, fix: &[CellState], letters: &[usize], hide: f64) -> LineSpec {
    let mut hidden = BTreeMap::new();
    LineSpec(
        fix.iter()
            .zip(letters)
            .map(|(&c, f)| {
                if *hidden.entry(*f).or_insert_with(|| rng.gen_bool(hide)) {
                    CellState::Unsettled
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn random_desc<R: Rng>(rng: &mut R, len: usize) -> Description {
    let t = rng.gen_range(0..=len / 2 + 1);
    Description::new((0..t).map(|_| rng.gen_range(1..=3)).collect()).expect("clues start at 1")
}

/// A line whose description comes from a hidden fix of its spec, so it is
/// always consistent.
pub fn consistent_line<R: Rng>(rng: &mut R, len: usize, kind: Letters) -> LineProblem {
    let letters = letters(rng, len, kind);
    let fix = face_fix(rng, &letters, 0.5);
    let hide = rng.gen_range(0.3..1.0);
    let spec = blur(rng, &fix, &letters, hide);
    LineProblem::new(spec, letters, Description::of_cells(&fix)).expect("spec follows the letters")
}

/// Spec and description drawn independently; often inconsistent.
pub fn arbitrary_line<R: Rng>(rng: &mut R, len: usize, kind: Letters) -> LineProblem {
    let letters = letters(rng, len, kind);
    let fix = face_fix(rng, &letters, 0.5);
    let hide = rng.gen_range(0.3..1.0);
    let spec = blur(rng, &fix, &letters, hide);
    LineProblem::new(spec, letters, random_desc(rng, len)).expect("spec follows the letters")
}

/// Half consistent, half arbitrary.
pub fn random_line<R: Rng>(rng: &mut R, len: usize, kind: Letters) -> LineProblem {
    if rng.gen_bool(0.5) {
        consistent_line(rng, len, kind)
    } else {
        arbitrary_line(rng, len, kind)
    }
}

pub fn random_grid<R: Rng>(rng: &mut R, w: usize, h: usize, density: f64) -> Vec<bool> {
    (0..w * h).map(|_| rng.gen_bool(density)).collect()
}

pub fn random_classic<R: Rng>(rng: &mut R, w: usize, h: usize) -> ClassicNonogram {
    let density = rng.gen_range(0.3..0.7);
    ClassicNonogram::from_grid(w, h, &random_grid(rng, w, h, density))
}

/// Nested sequence over distinct cells drawn from `pool`.
fn nested_sequence<R: Rng>(rng: &mut R, pool: &[usize], len: usize) -> Vec<usize> {
    let letters = nested_letters(rng, len);
    let faces = letters.iter().max().map_or(0, |m| m + 1).min(pool.len());
    let mut cells = pool.to_vec();
    cells.shuffle(rng);
    letters.into_iter().filter(|&f| f < faces).map(|f| cells[f]).collect()
}

/// A puzzle with basic and advanced curves built from a hidden fill, so it
/// has at least that fill as a solution. Sides of one curve never share
/// cells.
pub fn random_mixed_puzzle<R: Rng>(rng: &mut R, cell_count: usize, curve_count: usize) -> (Puzzle, Vec<CellState>) {
    let fill: Vec<CellState> = (0..cell_count).map(|_| CellState::from_bool(rng.gen_bool(0.5))).collect();
    let desc = |cells: &[usize]| Description::of_cells(&cells.iter().map(|&c| fill[c]).collect::<Vec<_>>());
    let mut curves = Vec::with_capacity(curve_count);
    for i in 0..curve_count {
        let mut ids: Vec<usize> = (0..cell_count).collect();
        ids.shuffle(rng);
        let split = rng.gen_range(0..=cell_count);
        let (rpool, lpool) = ids.split_at(split);
        let (rlen, llen) = (rng.gen_range(0..=2 * rpool.len()), rng.gen_range(0..=lpool.len()));
        let right = nested_sequence(rng, rpool, rlen);
        let left = nested_sequence(rng, lpool, llen);
        curves.push(Curve {
            name: format!("k{i}"),
            right: Sequence::new(right.clone(), desc(&right)),
            left: Sequence::new(left.clone(), desc(&left)),
        });
    }
    let puzzle = Puzzle::new(cell_count, curves, BTreeMap::new()).expect("ids drawn from range");
    (puzzle, fill)
}
