//! Text formats for puzzles and classic nonograms.
//!
//! Puzzle files:
//!
//! ```text
//! cells 3
//! curve a
//! right 0 1 2
//! rdesc 1 1
//! left -
//! ldesc -
//! prefill 1 0
//! ```
//!
//! Classic files:
//!
//! ```text
//! classic 2 2
//! row 1
//! row 1
//! col 1
//! col 1
//! ```
//!
//! `#` starts a comment. An empty list is written `-`. Serialization is
//! canonical: single spaces, `\n` line endings, no trailing whitespace,
//! prefills last in id order.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use crate::model::{CellState, ClassicNonogram, Curve, Description, Puzzle, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn number(&self) -> Result<usize, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected a number, found {:?}", self.text)))
    }
}

/// Non-empty lines as token lists, comments stripped.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (col, (byte, ch)) in body.char_indices().enumerate() {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some((byte, col)),
                    (true, Some((b, c))) => {
                        tokens.push(Token {
                            text: &body[b..byte],
                            line: i + 1,
                            column: c + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some((b, c)) = start {
                tokens.push(Token {
                    text: &body[b..],
                    line: i + 1,
                    column: c + 1,
                });
            }
            (!tokens.is_empty()).then_some(tokens)
        })
        .collect()
}

fn numbers<'a>(args: &[Token<'a>]) -> Result<Vec<(usize, Token<'a>)>, ParseError> {
    if args.len() == 1 && args[0].text == "-" {
        return Ok(Vec::new());
    }
    args.iter().map(|t| t.number().map(|n| (n, *t))).collect()
}

fn clues(args: &[Token<'_>]) -> Result<Description, ParseError> {
    let values = numbers(args)?;
    if let Some((_, t)) = values.iter().find(|(n, _)| *n == 0) {
        return Err(t.error("clue must be at least 1"));
    }
    Ok(Description::new(values.into_iter().map(|(n, _)| n).collect()).expect("checked above"))
}

fn expect_args<'a>(tokens: &'a [Token<'a>], count: usize) -> Result<&'a [Token<'a>], ParseError> {
    let args = &tokens[1..];
    if args.len() != count {
        return Err(tokens[0].error(format!(
            "`{}` takes {count} argument(s), found {}",
            tokens[0].text,
            args.len()
        )));
    }
    Ok(args)
}

fn nonempty_args<'a>(tokens: &'a [Token<'a>]) -> Result<&'a [Token<'a>], ParseError> {
    if tokens.len() < 2 {
        return Err(tokens[0].error(format!("`{}` needs a list or `-`", tokens[0].text)));
    }
    Ok(&tokens[1..])
}

#[derive(Default)]
struct CurveDraft<'a> {
    header: Option<Token<'a>>,
    name: String,
    right: Option<Vec<usize>>,
    rdesc: Option<Description>,
    left: Option<Vec<usize>>,
    ldesc: Option<Description>,
}

impl CurveDraft<'_> {
    fn finish(self) -> Result<Curve, ParseError> {
        let header = self.header.expect("drafts start at a curve line");
        let missing = |what: &str| header.error(format!("curve {:?} is missing `{what}`", self.name));
        Ok(Curve {
            right: Sequence::new(self.right.ok_or_else(|| missing("right"))?, self.rdesc.ok_or_else(|| missing("rdesc"))?),
            left: Sequence::new(self.left.ok_or_else(|| missing("left"))?, self.ldesc.ok_or_else(|| missing("ldesc"))?),
            name: self.name,
        })
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, at: &Token<'_>) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(at.error(format!("duplicate `{}`", at.text)));
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_puzzle(text: &str) -> Result<Puzzle, ParseError> {
    let lines = tokenize(text);
    let Some(first) = lines.first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty input, expected `cells <n>`".into(),
        });
    };
    if first[0].text != "cells" {
        return Err(first[0].error("expected `cells <n>`"));
    }
    let cell_count = expect_args(first, 1)?[0].number()?;
    let ids = |args: &[Token<'_>]| -> Result<Vec<usize>, ParseError> {
        numbers(args)?
            .into_iter()
            .map(|(id, t)| {
                if id < cell_count {
                    Ok(id)
                } else {
                    Err(t.error(format!("cell id {id} out of range for {cell_count} cells")))
                }
            })
            .collect()
    };

    let mut curves = Vec::new();
    let mut draft: Option<CurveDraft<'_>> = None;
    let mut prefills = BTreeMap::new();
    for tokens in &lines[1..] {
        let key = &tokens[0];
        let current = |draft: &mut Option<CurveDraft<'_>>| {
            if draft.is_none() {
                return Err(key.error(format!("`{}` outside a curve block", key.text)));
            }
            Ok(())
        };
        match key.text {
            "cells" => return Err(key.error("duplicate `cells`")),
            "curve" => {
                let name = expect_args(tokens, 1)?[0].text.to_string();
                if let Some(d) = draft.take() {
                    curves.push(d.finish()?);
                }
                draft = Some(CurveDraft {
                    header: Some(*key),
                    name,
                    ..Default::default()
                });
            }
            "right" | "left" | "rdesc" | "ldesc" => {
                current(&mut draft)?;
                let d = draft.as_mut().expect("checked");
                let args = nonempty_args(tokens)?;
                match key.text {
                    "right" => set_once(&mut d.right, ids(args)?, key)?,
                    "left" => set_once(&mut d.left, ids(args)?, key)?,
                    "rdesc" => set_once(&mut d.rdesc, clues(args)?, key)?,
                    _ => set_once(&mut d.ldesc, clues(args)?, key)?,
                }
            }
            "prefill" => {
                let args = expect_args(tokens, 2)?;
                let id = ids(&args[..1])?[0];
                let value = match args[1].text {
                    "0" => CellState::Empty,
                    "1" => CellState::Filled,
                    other => return Err(args[1].error(format!("prefill value must be 0 or 1, found {other:?}"))),
                };
                if prefills.insert(id, value).is_some() {
                    return Err(args[0].error(format!("cell {id} prefilled twice")));
                }
            }
            other => return Err(key.error(format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(d) = draft.take() {
        curves.push(d.finish()?);
    }
    Puzzle::new(cell_count, curves, prefills).map_err(|e| first[0].error(e.to_string()))
}

fn write_list(out: &mut String, key: &str, items: &[usize]) {
    out.push_str(key);
    if items.is_empty() {
        out.push_str(" -");
    }
    for i in items {
        let _ = write!(out, " {i}");
    }
    out.push('\n');
}

pub fn serialize_puzzle(p: &Puzzle) -> String {
    let mut out = format!("cells {}\n", p.cell_count());
    for c in p.curves() {
        let _ = writeln!(out, "curve {}", c.name);
        write_list(&mut out, "right", &c.right.cells);
        write_list(&mut out, "rdesc", c.right.desc.clues());
        write_list(&mut out, "left", &c.left.cells);
        write_list(&mut out, "ldesc", c.left.desc.clues());
    }
    for (id, v) in p.prefills() {
        let _ = writeln!(out, "prefill {id} {}", v.as_char());
    }
    out
}

pub fn parse_classic(text: &str) -> Result<ClassicNonogram, ParseError> {
    let lines = tokenize(text);
    let Some(first) = lines.first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty input, expected `classic <w> <h>`".into(),
        });
    };
    if first[0].text != "classic" {
        return Err(first[0].error("expected `classic <w> <h>`"));
    }
    let dims = expect_args(first, 2)?;
    let (w, h) = (dims[0].number()?, dims[1].number()?);
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for tokens in &lines[1..] {
        let key = &tokens[0];
        let desc = clues(nonempty_args(tokens)?)?;
        match key.text {
            "row" if rows.len() < h => rows.push(desc),
            "col" if cols.len() < w => cols.push(desc),
            "row" | "col" => return Err(key.error(format!("too many `{}` lines", key.text))),
            other => return Err(key.error(format!("unknown keyword {other:?}"))),
        }
    }
    if rows.len() != h || cols.len() != w {
        return Err(first[0].error(format!(
            "header declares {w} columns and {h} rows, found {} and {}",
            cols.len(),
            rows.len()
        )));
    }
    ClassicNonogram::new(rows, cols).map_err(|e| first[0].error(e.to_string()))
}

pub fn serialize_classic(n: &ClassicNonogram) -> String {
    let mut out = format!("classic {} {}\n", n.width(), n.height());
    for r in n.rows() {
        write_list(&mut out, "row", r.clues());
    }
    for c in n.cols() {
        write_list(&mut out, "col", c.clues());
    }
    out
}

/// Either file kind, told apart by the first keyword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Puzzle(Puzzle),
    Classic(ClassicNonogram),
}

pub fn parse_any(text: &str) -> Result<Input, ParseError> {
    let first = tokenize(text).first().map(|t| t[0].text.to_string());
    match first.as_deref() {
        Some("classic") => parse_classic(text).map(Input::Classic),
        _ => parse_puzzle(text).map(Input::Puzzle),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_puzzle() {
        let p = parse_puzzle("cells 1\ncurve a\nright 0\nrdesc 1\nleft -\nldesc -").unwrap();
        assert_eq!(p.cell_count(), 1);
        assert_eq!(p.curves()[0].right.cells, vec![0]);
        assert_eq!(p.curves()[0].right.desc.clues(), &[1]);
        assert!(p.curves()[0].left.cells.is_empty());
        assert_eq!(
            serialize_puzzle(&p),
            "cells 1\ncurve a\nright 0\nrdesc 1\nleft -\nldesc -\n"
        );
    }

    #[test]
    fn classic_double_diagonal() {
        let n = parse_classic("classic 2 2\nrow 1\nrow 1\ncol 1\ncol 1").unwrap();
        assert_eq!((n.width(), n.height()), (2, 2));
        assert!(n.rows().iter().chain(n.cols()).all(|d| d.clues() == [1]));
        assert_eq!(serialize_classic(&n), "classic 2 2\nrow 1\nrow 1\ncol 1\ncol 1\n");
    }

    #[test]
    fn zero_clue_is_positioned() {
        let err = parse_puzzle("cells 1\ncurve a\nright 0\nrdesc 0\nleft -\nldesc -").unwrap_err();
        assert_eq!((err.line, err.column), (4, 7));
        assert!(err.message.contains("at least 1"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_puzzle("cells 2\ncurve a\nright 0 5\nrdesc -\nleft -\nldesc -").unwrap_err();
        assert_eq!((err.line, err.column), (3, 9));
        let err = parse_puzzle("# header\ncells 2\n  bogus 1").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        let err = parse_puzzle("cells 2\ncurve a\nright 0\nrdesc 1\nleft -").unwrap_err();
        assert!(err.message.contains("ldesc"), "{err}");
        let err = parse_puzzle("cells 2\nright 0").unwrap_err();
        assert!(err.message.contains("outside"));
        let err = parse_puzzle("cells 2\nprefill 0 1\nprefill 0 0").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_classic("classic 2 1\nrow 1\ncol 1").unwrap_err();
        assert!(err.message.contains("declares"));
        let err = parse_classic("classic 1 1\nrow 2\ncol 1").unwrap_err();
        assert!(err.message.contains("does not fit"));
        assert!(parse_puzzle("").is_err());
    }

    #[test]
    fn comments_and_prefills() {
        let text = "# a puzzle\ncells 3 # three cells\nprefill 2 1\ncurve x\nright 0 1 2\nrdesc 1 1\nleft -\nldesc -\nprefill 0 0\n";
        let p = parse_puzzle(text).unwrap();
        assert_eq!(p.prefills().len(), 2);
        assert_eq!(
            serialize_puzzle(&p),
            "cells 3\ncurve x\nright 0 1 2\nrdesc 1 1\nleft -\nldesc -\nprefill 0 0\nprefill 2 1\n"
        );
    }

    #[test]
    fn detects_file_kind() {
        assert!(matches!(parse_any("# c\nclassic 1 1\nrow 1\ncol 1"), Ok(Input::Classic(_))));
        assert!(matches!(parse_any("cells 0"), Ok(Input::Puzzle(_))));
    }

    fn arb_desc(max: usize) -> impl Strategy<Value = Description> {
        prop::collection::vec(1..=max, 0..4).prop_map(|c| Description::new(c).unwrap())
    }

    fn arb_puzzle() -> impl Strategy<Value = Puzzle> {
        (1usize..12).prop_flat_map(|n| {
            let seq = || (prop::collection::vec(0..n, 0..8), arb_desc(3)).prop_map(|(c, d)| Sequence::new(c, d));
            let curve = ("[a-z][a-z0-9_]{0,5}", seq(), seq()).prop_map(|(name, right, left)| Curve { name, right, left });
            (
                prop::collection::vec(curve, 0..5),
                prop::collection::btree_map(0..n, prop::bool::ANY.prop_map(CellState::from_bool), 0..4),
            )
                .prop_map(move |(curves, prefills)| Puzzle::new(n, curves, prefills).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn puzzle_round_trip(p in arb_puzzle()) {
            let text = serialize_puzzle(&p);
            let back = parse_puzzle(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(serialize_puzzle(&back), text);
        }

        #[test]
        fn classic_round_trip(w in 1usize..7, h in 1usize..7, bits in any::<u64>()) {
            let grid: Vec<bool> = (0..w * h).map(|i| bits >> (i % 64) & 1 == 1).collect();
            let n = ClassicNonogram::from_grid(w, h, &grid);
            let text = serialize_classic(&n);
            prop_assert_eq!(parse_classic(&text).unwrap(), n);
        }
    }
}
