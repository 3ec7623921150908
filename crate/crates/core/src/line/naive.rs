use super::check_consistency;
use crate::error::LineError;
use crate::model::{CellState, LineProblem};
use crate::model::LineSpec;

/// Settles by trial: each unsettled face is set to `0`, then to `1`, and the
/// line is rechecked. A face is settled when exactly one value survives.
pub fn settle_naive(p: &LineProblem) -> Result<LineSpec, LineError> {
    if !check_consistency(p)? {
        return Err(LineError::Inconsistent);
    }
    let mut out = p.spec().clone();
    for face in p.unsettled_faces() {
        let empty_ok = check_consistency(&p.with_spec(p.assign_face(face, CellState::Empty))?)?;
        let fill_ok = check_consistency(&p.with_spec(p.assign_face(face, CellState::Filled))?)?;
        let value = match (empty_ok, fill_ok) {
            (true, false) => CellState::Empty,
            (false, true) => CellState::Filled,
            _ => continue,
        };
        for (cell, &f) in out.0.iter_mut().zip(p.letters()) {
            if f == face {
                *cell = value;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_examples() {
        let s = |spec: &str, letters: &str, desc: &str| {
            settle_naive(&LineProblem::from_strs(spec, letters, desc).unwrap())
                .unwrap()
                .to_string()
        };
        assert_eq!(s("????", "abba", "2"), "0110");
        assert_eq!(s("??", "ab", "2"), "11");
        assert_eq!(s("?1?", "abc", "1"), "010");
    }

    #[test]
    fn inconsistent_input_is_an_error() {
        let p = LineProblem::from_strs("1?1", "abc", "3-1").unwrap();
        assert_eq!(settle_naive(&p).unwrap_err(), LineError::Inconsistent);
    }
}
