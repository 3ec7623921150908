//! Timing of the line settle on large basic lines.

use std::fmt::Write;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::error::LineError;
use crate::gen::rng;
use crate::line::{settle_with, translate_description, LineMethod};
use crate::model::{CellState, Description, LineProblem, LineSpec};
use crate::oracle::DEFAULT_BOUND;

/// Fully unsettled line of distinct letters whose description is read off a
/// random fill.
pub fn basic_line_instance(len: usize, seed: u64) -> LineProblem {
    let mut r = rng(seed);
    let fill: Vec<CellState> = (0..len).map(|_| CellState::from_bool(r.gen_bool(0.5))).collect();
    LineProblem::distinct(LineSpec::unsettled(len), Description::of_cells(&fill))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub len: usize,
    /// Length of the translated description.
    pub desc_len: usize,
    pub seconds: f64,
}

pub fn time_settle(p: &LineProblem, method: LineMethod) -> Result<Duration, LineError> {
    let start = Instant::now();
    settle_with(p, method, DEFAULT_BOUND)?;
    Ok(start.elapsed())
}

pub fn run_basic_line(sizes: &[usize], seed: u64, method: LineMethod) -> Result<Vec<BenchRow>, LineError> {
    sizes
        .iter()
        .map(|&len| {
            let p = basic_line_instance(len, seed ^ len as u64);
            let elapsed = time_settle(&p, method)?;
            Ok(BenchRow {
                len,
                desc_len: translate_description(p.desc()).len(),
                seconds: elapsed.as_secs_f64(),
            })
        })
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("l,m,seconds\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{:.6}", r.len, r.desc_len, r.seconds);
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = logs.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    cov / var
}
