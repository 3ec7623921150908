//! Binary composition tree over the positions of a nested line.
//!
//! For a face occurring at `j1 < j2 < ... < jm`, the interval `j1..jm` is a
//! complete group and `jp+1..j(p+1)` is a bracket. A complete group is built
//! left to right by appending brackets to its growing prefix; a bracket is
//! built left to right from the complete groups it contains followed by the
//! closing occurrence. The whole line is one bracket without a closing cell.
//! Every join of `l` leaves adds one node, so the tree has `2l - 1` nodes.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::LineError;
use crate::model::is_nested;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Join {
        left: usize,
        right: usize,
        /// Set when a prefix of a complete group is joined with the bracket
        /// that closes at the next occurrence of the same face.
        needs_color_match: bool,
    },
}

/// Inclusive interval `start..=end` of positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node {
    pub start: usize,
    pub end: usize,
    pub kind: NodeKind,
}

/// Nodes are stored children first, so index order is a valid bottom-up order
/// and the root is the last node.
#[derive(Clone, Debug)]
pub struct DecompositionTree {
    nodes: Vec<Node>,
    leaves: Vec<usize>,
}

impl DecompositionTree {
    pub fn build<L: Eq + Hash>(letters: &[L]) -> Result<Self, LineError> {
        if !is_nested(letters) {
            return Err(LineError::NotNested);
        }
        let mut ids: HashMap<&L, usize> = HashMap::new();
        let faces: Vec<usize> = letters
            .iter()
            .map(|l| {
                let n = ids.len();
                *ids.entry(l).or_insert(n)
            })
            .collect();
        let mut next = vec![None; letters.len()];
        let mut last_seen: Vec<Option<usize>> = vec![None; ids.len()];
        let mut last = vec![0; ids.len()];
        for (pos, &f) in faces.iter().enumerate() {
            if let Some(prev) = last_seen[f] {
                next[prev] = Some(pos);
            }
            last_seen[f] = Some(pos);
            last[f] = pos;
        }
        let mut builder = Builder {
            faces: &faces,
            next: &next,
            last: &last,
            nodes: Vec::with_capacity(2 * letters.len()),
            leaves: vec![usize::MAX; letters.len()],
        };
        builder.bracket(0, letters.len());
        Ok(DecompositionTree {
            nodes: builder.nodes,
            leaves: builder.leaves,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.nodes.len().checked_sub(1)
    }

    /// Node index of the singleton interval at `pos`.
    pub fn leaf(&self, pos: usize) -> usize {
        self.leaves[pos]
    }
}

struct Builder<'a> {
    faces: &'a [usize],
    next: &'a [Option<usize>],
    last: &'a [usize],
    nodes: Vec<Node>,
    leaves: Vec<usize>,
}

impl Builder<'_> {
    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn leaf(&mut self, pos: usize) -> usize {
        let id = self.push(Node {
            start: pos,
            end: pos,
            kind: NodeKind::Leaf,
        });
        self.leaves[pos] = id;
        id
    }

    fn join(&mut self, left: usize, right: usize, needs_color_match: bool) -> usize {
        let (start, end) = (self.nodes[left].start, self.nodes[right].end);
        debug_assert_eq!(self.nodes[left].end + 1, self.nodes[right].start);
        self.push(Node {
            start,
            end,
            kind: NodeKind::Join {
                left,
                right,
                needs_color_match,
            },
        })
    }

    /// Complete groups covering `from..to`, joined left to right.
    fn bracket(&mut self, from: usize, to: usize) -> Option<usize> {
        let mut acc = None;
        let mut pos = from;
        while pos < to {
            let end = self.last[self.faces[pos]];
            debug_assert!(end < to, "nesting guarantees groups stay inside brackets");
            let group = self.group(pos);
            acc = Some(match acc {
                None => group,
                Some(prev) => self.join(prev, group, false),
            });
            pos = end + 1;
        }
        acc
    }

    /// Complete group starting at the first occurrence `first`.
    fn group(&mut self, first: usize) -> usize {
        let mut acc = self.leaf(first);
        let mut pos = first;
        while let Some(close) = self.next[pos] {
            let inner = self.bracket(pos + 1, close);
            let closing = self.leaf(close);
            let bracket = match inner {
                Some(groups) => self.join(groups, closing, false),
                None => closing,
            };
            acc = self.join(acc, bracket, true);
            pos = close;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn intervals(t: &DecompositionTree) -> Vec<(usize, usize)> {
        t.nodes().iter().map(|n| (n.start, n.end)).collect()
    }

    #[test]
    fn running_example_has_2l_minus_1_nodes() {
        let t = DecompositionTree::build(&chars("abcdefdbgbh")).unwrap();
        assert_eq!(t.len(), 21);
        let root = t.nodes()[t.root().unwrap()];
        assert_eq!((root.start, root.end), (0, 10));
        let mut seen = intervals(&t);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 21);
    }

    #[test]
    fn distinct_letters_give_a_left_comb() {
        let t = DecompositionTree::build(&chars("abc")).unwrap();
        assert_eq!(intervals(&t), vec![(0, 0), (1, 1), (0, 1), (2, 2), (0, 2)]);
        assert!(t.nodes().iter().all(|n| !matches!(
            n.kind,
            NodeKind::Join {
                needs_color_match: true,
                ..
            }
        )));
    }

    #[test]
    fn sleuth_plus_bracket_is_flagged() {
        let t = DecompositionTree::build(&chars("aba")).unwrap();
        let mut got = intervals(&t);
        got.sort();
        assert_eq!(got, vec![(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)]);
        let root = t.nodes()[t.root().unwrap()];
        match root.kind {
            NodeKind::Join {
                left,
                right,
                needs_color_match,
            } => {
                assert!(needs_color_match);
                assert_eq!((t.nodes()[left].start, t.nodes()[left].end), (0, 0));
                assert_eq!((t.nodes()[right].start, t.nodes()[right].end), (1, 2));
            }
            NodeKind::Leaf => panic!("root must be a join"),
        }
        let inner = t.nodes().iter().find(|n| (n.start, n.end) == (1, 2)).unwrap();
        assert!(matches!(
            inner.kind,
            NodeKind::Join {
                needs_color_match: false,
                ..
            }
        ));
    }

    #[test]
    fn adjacent_repeats_join_leaves_directly() {
        let t = DecompositionTree::build(&chars("aab")).unwrap();
        assert_eq!(intervals(&t), vec![(0, 0), (1, 1), (0, 1), (2, 2), (0, 2)]);
        assert!(matches!(
            t.nodes()[2].kind,
            NodeKind::Join {
                needs_color_match: true,
                ..
            }
        ));
    }

    #[test]
    fn crossing_letters_are_rejected() {
        assert_eq!(
            DecompositionTree::build(&chars("abab")).unwrap_err(),
            LineError::NotNested
        );
    }

    #[test]
    fn leaves_cover_every_position() {
        let t = DecompositionTree::build(&chars("xabccbay")).unwrap();
        assert_eq!(t.len(), 15);
        for pos in 0..8 {
            let n = t.nodes()[t.leaf(pos)];
            assert_eq!((n.start, n.end, n.kind), (pos, pos, NodeKind::Leaf));
        }
    }
}
