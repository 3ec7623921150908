//! Puzzle and line model: cell states, descriptions, line problems, puzzles
//! and the basic / advanced / expert classification.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::ModelError;

/// Value of a single cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellState {
    Empty,
    Filled,
    Unsettled,
}

impl CellState {
    pub fn is_settled(self) -> bool {
        self != CellState::Unsettled
    }

    pub fn as_char(self) -> char {
        match self {
            CellState::Empty => '0',
            CellState::Filled => '1',
            CellState::Unsettled => '?',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(CellState::Empty),
            '1' => Some(CellState::Filled),
            '?' => Some(CellState::Unsettled),
            _ => None,
        }
    }

    pub fn from_bool(filled: bool) -> Self {
        if filled {
            CellState::Filled
        } else {
            CellState::Empty
        }
    }
}

/// A specification string over `{0, 1, ?}`. A spec without `?` is a fix.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineSpec(pub Vec<CellState>);

impl LineSpec {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_fix(&self) -> bool {
        self.0.iter().all(|c| c.is_settled())
    }

    pub fn cells(&self) -> &[CellState] {
        &self.0
    }

    pub fn unsettled(len: usize) -> Self {
        LineSpec(vec![CellState::Unsettled; len])
    }
}

impl FromStr for LineSpec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| CellState::from_char(c).ok_or(ModelError::BadSymbol(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(LineSpec)
    }
}

impl fmt::Display for LineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

/// Ordered list of block lengths. Every clue is at least one; the empty
/// description means the line has no filled cell.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Description(Vec<usize>);

impl Description {
    pub fn new(clues: Vec<usize>) -> Result<Self, ModelError> {
        if clues.contains(&0) {
            return Err(ModelError::ZeroClue);
        }
        Ok(Description(clues))
    }

    pub fn empty() -> Self {
        Description(Vec::new())
    }

    /// Block lengths of a fix, left to right. `?` cells are treated as empty.
    pub fn of_cells(cells: &[CellState]) -> Self {
        let mut clues = Vec::new();
        let mut run = 0;
        for &c in cells {
            if c == CellState::Filled {
                run += 1;
            } else if run > 0 {
                clues.push(run);
                run = 0;
            }
        }
        if run > 0 {
            clues.push(run);
        }
        Description(clues)
    }

    pub fn clues(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of filled cells described.
    pub fn filled_count(&self) -> usize {
        self.0.iter().sum()
    }

    /// Shortest line that can hold the description.
    pub fn min_len(&self) -> usize {
        if self.0.is_empty() {
            0
        } else {
            self.filled_count() + self.0.len() - 1
        }
    }
}

/// Dash-separated form used on the command line: `5-1-2`, `-` for empty.
impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

impl FromStr for Description {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Description::empty());
        }
        let clues = s
            .split('-')
            .map(|p| p.parse::<usize>().map_err(|_| ModelError::BadClue(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Description::new(clues)
    }
}

/// One side of one curve, seen in isolation: a spec, the face labels of its
/// positions (equal labels are the same face) and a description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineProblem {
    spec: LineSpec,
    letters: Vec<usize>,
    desc: Description,
}

impl LineProblem {
    pub fn new(spec: LineSpec, letters: Vec<usize>, desc: Description) -> Result<Self, ModelError> {
        if spec.len() != letters.len() {
            return Err(ModelError::LengthMismatch {
                left: spec.len(),
                right: letters.len(),
            });
        }
        let mut seen: HashMap<usize, (usize, CellState)> = HashMap::new();
        for (pos, (&face, &state)) in letters.iter().zip(spec.cells()).enumerate() {
            match seen.get(&face) {
                Some(&(first, s)) if s != state => {
                    return Err(ModelError::EqualityViolation { first, second: pos });
                }
                Some(_) => {}
                None => {
                    seen.insert(face, (pos, state));
                }
            }
        }
        Ok(LineProblem { spec, letters, desc })
    }

    /// Line whose positions are all different faces.
    pub fn distinct(spec: LineSpec, desc: Description) -> Self {
        let letters = (0..spec.len()).collect();
        LineProblem { spec, letters, desc }
    }

    /// Parses letters given as one character per position.
    pub fn from_strs(spec: &str, letters: &str, desc: &str) -> Result<Self, ModelError> {
        let spec: LineSpec = spec.parse()?;
        let letters = letters.chars().map(|c| c as usize).collect();
        LineProblem::new(spec, letters, desc.parse()?)
    }

    pub fn spec(&self) -> &LineSpec {
        &self.spec
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn desc(&self) -> &Description {
        &self.desc
    }

    pub fn len(&self) -> usize {
        self.spec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty()
    }

    /// Same line with a different spec; the new spec must respect the letters.
    pub fn with_spec(&self, spec: LineSpec) -> Result<Self, ModelError> {
        LineProblem::new(spec, self.letters.clone(), self.desc.clone())
    }

    /// Distinct faces that are still unsettled, in order of first occurrence.
    pub fn unsettled_faces(&self) -> Vec<usize> {
        let mut seen = HashSet::new();
        self.letters
            .iter()
            .zip(self.spec.cells())
            .filter(|(_, s)| !s.is_settled())
            .filter_map(|(&f, _)| seen.insert(f).then_some(f))
            .collect()
    }

    /// Copy of the spec with every occurrence of `face` set to `value`.
    pub fn assign_face(&self, face: usize, value: CellState) -> LineSpec {
        let mut cells = self.spec.0.clone();
        for (c, &f) in cells.iter_mut().zip(&self.letters) {
            if f == face {
                *c = value;
            }
        }
        LineSpec(cells)
    }
}

/// Difficulty class of a line or a puzzle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Difficulty {
    Basic,
    Advanced,
    Expert,
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Difficulty::Basic => "basic",
            Difficulty::Advanced => "advanced",
            Difficulty::Expert => "expert",
        })
    }
}

/// Ordered cells on one side of a curve together with their description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequence {
    pub cells: Vec<usize>,
    pub desc: Description,
}

impl Sequence {
    pub fn new(cells: Vec<usize>, desc: Description) -> Self {
        Sequence { cells, desc }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub right: Sequence,
    pub left: Sequence,
}

impl Curve {
    pub fn sequence(&self, side: Side) -> &Sequence {
        match side {
            Side::Right => &self.right,
            Side::Left => &self.left,
        }
    }
}

/// A curved nonogram with the geometry abstracted away: global cells, and
/// per curve a right and a left sequence of cell ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Puzzle {
    cell_count: usize,
    curves: Vec<Curve>,
    prefills: BTreeMap<usize, CellState>,
}

impl Puzzle {
    pub fn new(
        cell_count: usize,
        curves: Vec<Curve>,
        prefills: BTreeMap<usize, CellState>,
    ) -> Result<Self, ModelError> {
        for curve in &curves {
            for seq in [&curve.right, &curve.left] {
                if let Some(&id) = seq.cells.iter().find(|&&id| id >= cell_count) {
                    return Err(ModelError::CellOutOfRange { id, cell_count });
                }
            }
        }
        for (&id, &v) in &prefills {
            if id >= cell_count {
                return Err(ModelError::CellOutOfRange { id, cell_count });
            }
            if !v.is_settled() {
                return Err(ModelError::UnsettledPrefill(id));
            }
        }
        Ok(Puzzle {
            cell_count,
            curves,
            prefills,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn prefills(&self) -> &BTreeMap<usize, CellState> {
        &self.prefills
    }

    /// All sequences, right before left for each curve, in curve order.
    pub fn sequences(&self) -> impl Iterator<Item = (usize, Side, &Sequence)> + '_ {
        self.curves.iter().enumerate().flat_map(|(i, c)| {
            [(i, Side::Right, &c.right), (i, Side::Left, &c.left)]
        })
    }

    /// Board with the prefills applied and every other cell unsettled.
    pub fn initial_cells(&self) -> Vec<CellState> {
        let mut cells = vec![CellState::Unsettled; self.cell_count];
        for (&id, &v) in &self.prefills {
            cells[id] = v;
        }
        cells
    }
}

/// A rectangular nonogram. Row descriptions run top to bottom, column
/// descriptions left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicNonogram {
    width: usize,
    height: usize,
    rows: Vec<Description>,
    cols: Vec<Description>,
}

impl ClassicNonogram {
    pub fn new(rows: Vec<Description>, cols: Vec<Description>) -> Result<Self, ModelError> {
        let (width, height) = (cols.len(), rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.min_len() > width {
                return Err(ModelError::ClueOverflow { line: format!("row {i}"), len: width });
            }
        }
        for (i, c) in cols.iter().enumerate() {
            if c.min_len() > height {
                return Err(ModelError::ClueOverflow { line: format!("col {i}"), len: height });
            }
        }
        Ok(ClassicNonogram {
            width,
            height,
            rows,
            cols,
        })
    }

    /// Nonogram whose descriptions are read off a filled grid (row-major).
    pub fn from_grid(width: usize, height: usize, grid: &[bool]) -> Self {
        assert_eq!(grid.len(), width * height);
        let cell = |r: usize, c: usize| CellState::from_bool(grid[r * width + c]);
        let rows = (0..height)
            .map(|r| Description::of_cells(&(0..width).map(|c| cell(r, c)).collect::<Vec<_>>()))
            .collect();
        let cols = (0..width)
            .map(|c| Description::of_cells(&(0..height).map(|r| cell(r, c)).collect::<Vec<_>>()))
            .collect();
        ClassicNonogram {
            width,
            height,
            rows,
            cols,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn rows(&self) -> &[Description] {
        &self.rows
    }

    pub fn cols(&self) -> &[Description] {
        &self.cols
    }
}

/// True iff `fine` agrees with `coarse` wherever `coarse` is settled.
pub fn is_refinement(coarse: &LineSpec, fine: &LineSpec) -> Result<bool, ModelError> {
    if coarse.len() != fine.len() {
        return Err(ModelError::LengthMismatch {
            left: coarse.len(),
            right: fine.len(),
        });
    }
    Ok(coarse
        .cells()
        .iter()
        .zip(fine.cells())
        .all(|(&c, &f)| c == CellState::Unsettled || c == f))
}

/// True iff the maximal filled blocks of `fix` have exactly the clue lengths.
pub fn fix_consistent(fix: &LineSpec, desc: &Description) -> Result<bool, ModelError> {
    if let Some(pos) = fix.cells().iter().position(|c| !c.is_settled()) {
        return Err(ModelError::NotAFix(pos));
    }
    Ok(Description::of_cells(fix.cells()) == *desc)
}

/// True iff no two faces interleave as `x .. y .. x .. y`.
pub fn is_nested<L: Eq + Hash>(letters: &[L]) -> bool {
    let mut remaining: HashMap<&L, usize> = HashMap::new();
    for l in letters {
        *remaining.entry(l).or_default() += 1;
    }
    let total: HashMap<&L, usize> = remaining.clone();
    // faces seen but with occurrences still ahead, innermost on top
    let mut open: Vec<&L> = Vec::new();
    for l in letters {
        let left = remaining.get_mut(l).unwrap();
        let first = *left == total[l];
        *left -= 1;
        if !first {
            if open.last() != Some(&l) {
                return false;
            }
            if *left == 0 {
                open.pop();
            }
        } else if *left > 0 {
            open.push(l);
        }
    }
    true
}

pub fn classify_line<L: Eq + Hash>(letters: &[L]) -> Difficulty {
    let distinct = letters.iter().collect::<HashSet<_>>().len();
    if distinct == letters.len() {
        Difficulty::Basic
    } else if is_nested(letters) {
        Difficulty::Advanced
    } else {
        Difficulty::Expert
    }
}

pub fn classify_curve(curve: &Curve) -> Difficulty {
    let right: HashSet<_> = curve.right.cells.iter().collect();
    if curve.left.cells.iter().any(|c| right.contains(c)) {
        return Difficulty::Expert;
    }
    classify_line(&curve.right.cells).max(classify_line(&curve.left.cells))
}

pub fn classify_puzzle(p: &Puzzle) -> Difficulty {
    p.curves()
        .iter()
        .map(classify_curve)
        .max()
        .unwrap_or(Difficulty::Basic)
}

/// Embeds a classic grid as a curved puzzle: cell `r * w + c`, one curve per
/// row (`r<i>`) then per column (`c<j>`), each with its cells on the right
/// side and an empty left side.
pub fn classic_to_puzzle(n: &ClassicNonogram) -> Puzzle {
    let (w, h) = (n.width(), n.height());
    let mut curves = Vec::with_capacity(w + h);
    for (r, desc) in n.rows().iter().enumerate() {
        curves.push(Curve {
            name: format!("r{r}"),
            right: Sequence::new((0..w).map(|c| r * w + c).collect(), desc.clone()),
            left: Sequence::default(),
        });
    }
    for (c, desc) in n.cols().iter().enumerate() {
        curves.push(Curve {
            name: format!("c{c}"),
            right: Sequence::new((0..h).map(|r| r * w + c).collect(), desc.clone()),
            left: Sequence::default(),
        });
    }
    Puzzle {
        cell_count: w * h,
        curves,
        prefills: BTreeMap::new(),
    }
}
