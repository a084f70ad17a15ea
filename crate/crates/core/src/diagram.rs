//! Pipe dreams and super pipe dreams on the half-plane `H = {(i, j) : i + j - 1 ≥ 1}`.
//!
//! Cells are `(row, column)` pairs of signed integers. A cell's *letter* is
//! `i + j - 1`; reading letters row by row from the top, right to left in each
//! row, gives the word whose Demazure product is the diagram's permutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A `(row, column)` position.
pub type Cell = (i64, i64);

pub fn in_half_plane(cell: Cell) -> bool {
    cell.0 + cell.1 >= 2
}

/// The simple transposition index `i + j - 1` of a cell in `H`.
pub fn letter(cell: Cell) -> u32 {
    debug_assert!(in_half_plane(cell));
    (cell.0 + cell.1 - 1) as u32
}

/// Reading order: rows ascending, columns descending within a row.
fn reading_key(cell: &Cell) -> (i64, i64) {
    (cell.0, -cell.1)
}

/// A finite set of crosses in `H`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct PipeDream {
    cells: BTreeSet<Cell>,
}

impl PipeDream {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(c) = cells.iter().find(|&&c| !in_half_plane(c)) {
            return Err(Error::argument(format!("cell {c:?} lies outside the half-plane")));
        }
        Ok(PipeDream { cells })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_set(cells: BTreeSet<Cell>) -> Self {
        debug_assert!(cells.iter().all(|&c| in_half_plane(c)));
        PipeDream { cells }
    }

    /// Crosses in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub(crate) fn insert(&mut self, cell: Cell) -> bool {
        debug_assert!(in_half_plane(cell));
        self.cells.insert(cell)
    }

    pub(crate) fn remove(&mut self, cell: Cell) -> bool {
        self.cells.remove(&cell)
    }

    /// Crosses in reading order.
    pub fn reading_order(&self) -> Vec<Cell> {
        let mut v: Vec<Cell> = self.cells().collect();
        v.sort_by_key(reading_key);
        v
    }

    pub fn word(&self) -> Vec<u32> {
        self.reading_order().into_iter().map(letter).collect()
    }

    /// The Demazure product of the word.
    pub fn permutation(&self) -> Permutation {
        Permutation::from_word(&self.word())
    }

    pub fn is_reduced(&self) -> bool {
        self.permutation().length() == self.len()
    }

    /// All crosses in rows and columns `≥ 1`.
    pub fn is_ordinary(&self) -> bool {
        self.cells().all(|(i, j)| i >= 1 && j >= 1)
    }

    /// All crosses in rows `≥ 1`.
    pub fn is_stable(&self) -> bool {
        self.cells().all(|(i, _)| i >= 1)
    }

    pub fn transpose(&self) -> Self {
        Self::from_set(self.cells().map(|(i, j)| (j, i)).collect())
    }

    /// `σ^k`: moves every cross `k` steps south-west, `(i, j) ↦ (i + k, j - k)`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_set(self.cells().map(|(i, j)| (i + k, j - k)).collect())
    }

    /// Shifts every cross `k` columns east.
    pub fn shift_columns(&self, k: i64) -> Result<Self> {
        Self::new(self.cells().map(|(i, j)| (i, j + k)))
    }

    pub fn row_counts(&self) -> BTreeMap<i64, u32> {
        let mut m = BTreeMap::new();
        for (i, _) in self.cells() {
            *m.entry(i).or_insert(0) += 1;
        }
        m
    }

    pub fn col_counts(&self) -> BTreeMap<i64, u32> {
        self.transpose().row_counts()
    }

    pub fn min_row(&self) -> Option<i64> {
        self.cells().map(|c| c.0).min()
    }

    pub fn max_row(&self) -> Option<i64> {
        self.cells().map(|c| c.0).max()
    }

    pub fn min_col(&self) -> Option<i64> {
        self.cells().map(|c| c.1).min()
    }

    pub fn max_col(&self) -> Option<i64> {
        self.cells().map(|c| c.1).max()
    }

    /// Largest letter, zero when empty.
    pub fn max_letter(&self) -> u32 {
        self.cells().map(letter).max().unwrap_or(0)
    }

    /// For each cross, the labels of the pipes passing through it
    /// horizontally and vertically. Pipe `k` is the `k`-th pipe from the top
    /// in any column west of every cross.
    pub fn pipe_labels(&self) -> BTreeMap<Cell, (u32, u32)> {
        let mut order: Vec<Cell> = self.cells().collect();
        order.sort_by_key(|&(i, j)| (-i, j));
        let size = self.max_letter() as usize + 2;
        let mut at: Vec<u32> = (0..size as u32).collect();
        let mut out = BTreeMap::new();
        for c in order {
            let a = letter(c) as usize;
            out.insert(c, (at[a], at[a + 1]));
            at.swap(a, a + 1);
        }
        out
    }

    /// Rewrites a ladder between its three admissible states.
    pub fn ladder_move(&self, ladder: Ladder, target: LadderState) -> Result<Self> {
        let current = ladder.state_of(self).ok_or_else(|| {
            Error::precondition(format!("{ladder:?} does not match a ladder pattern"))
        })?;
        let mut out = self.clone();
        for c in ladder.corners(current) {
            out.remove(c);
        }
        for c in ladder.corners(target) {
            if !in_half_plane(c) {
                return Err(Error::precondition(format!("ladder corner {c:?} leaves H")));
            }
            out.insert(c);
        }
        Ok(out)
    }

    /// The transpose of a ladder move.
    pub fn chute_move(&self, chute: Chute, target: LadderState) -> Result<Self> {
        let ladder = Ladder { bottom_row: chute.right_col, col: chute.row, height: chute.width };
        Ok(self.transpose().ladder_move(ladder, target)?.transpose())
    }
}

/// A ladder on columns `col, col + 1` spanning rows
/// `bottom_row - height + 1 ..= bottom_row`: the interior rows are full,
/// the top-left and bottom-right cells are empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub bottom_row: i64,
    pub col: i64,
    pub height: usize,
}

/// The transpose of a [`Ladder`]: rows `row, row + 1`, columns ending at `right_col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chute {
    pub row: i64,
    pub right_col: i64,
    pub width: usize,
}

/// Which of the two free corners of a ladder hold crosses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderState {
    /// Only the bottom-left corner.
    Lower,
    /// Only the top-right corner.
    Upper,
    /// Both corners; never reduced.
    Both,
}

impl Ladder {
    fn top_row(&self) -> i64 {
        self.bottom_row - self.height as i64 + 1
    }

    fn corners(&self, state: LadderState) -> Vec<Cell> {
        let lower = (self.bottom_row, self.col);
        let upper = (self.top_row(), self.col + 1);
        match state {
            LadderState::Lower => vec![lower],
            LadderState::Upper => vec![upper],
            LadderState::Both => vec![lower, upper],
        }
    }

    fn state_of(&self, p: &PipeDream) -> Option<LadderState> {
        if self.height < 2 {
            return None;
        }
        let (top, bottom, c) = (self.top_row(), self.bottom_row, self.col);
        let interior_full = (top + 1..bottom).all(|i| p.contains((i, c)) && p.contains((i, c + 1)));
        if !interior_full || p.contains((top, c)) || p.contains((bottom, c + 1)) {
            return None;
        }
        match (p.contains((bottom, c)), p.contains((top, c + 1))) {
            (true, false) => Some(LadderState::Lower),
            (false, true) => Some(LadderState::Upper),
            (true, true) => Some(LadderState::Both),
            (false, false) => None,
        }
    }
}

/// Contents of one cell of a super pipe dream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Checkers {
    pub black: bool,
    pub red: bool,
}

impl Checkers {
    pub const EMPTY: Checkers = Checkers { black: false, red: false };

    pub fn is_empty(self) -> bool {
        !self.black && !self.red
    }
}

/// A pair `(black, red)` of pipe dreams; a cell may hold both colours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct SuperPipeDream {
    pub black: PipeDream,
    pub red: PipeDream,
}

/// Exponents of the monomial `β^beta · Π x_i^{x[i]} · Π y_j^{y[j]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExponentRecord {
    pub beta: u32,
    pub x: BTreeMap<i64, u32>,
    pub y: BTreeMap<i64, u32>,
}

impl SuperPipeDream {
    pub fn new(black: PipeDream, red: PipeDream) -> Self {
        SuperPipeDream { black, red }
    }

    pub fn from_cells(
        black: impl IntoIterator<Item = Cell>,
        red: impl IntoIterator<Item = Cell>,
    ) -> Result<Self> {
        Ok(SuperPipeDream { black: PipeDream::new(black)?, red: PipeDream::new(red)? })
    }

    /// Underlying pipe dream `P_x ∪ P_y`.
    pub fn union(&self) -> PipeDream {
        PipeDream::from_set(self.black.cell_set().union(self.red.cell_set()).copied().collect())
    }

    pub fn word(&self) -> Vec<u32> {
        self.union().word()
    }

    pub fn permutation(&self) -> Permutation {
        self.union().permutation()
    }

    pub fn checker_count(&self) -> usize {
        self.black.len() + self.red.len()
    }

    pub fn is_reduced(&self) -> bool {
        self.checker_count() == self.permutation().length()
    }

    pub fn is_ordinary(&self) -> bool {
        self.black.is_ordinary() && self.red.is_ordinary()
    }

    pub fn is_stable(&self) -> bool {
        self.black.is_stable() && self.red.is_stable()
    }

    pub fn at(&self, cell: Cell) -> Checkers {
        Checkers { black: self.black.contains(cell), red: self.red.contains(cell) }
    }

    pub(crate) fn set(&mut self, cell: Cell, c: Checkers) {
        if c.black {
            self.black.insert(cell);
        } else {
            self.black.remove(cell);
        }
        if c.red {
            self.red.insert(cell);
        } else {
            self.red.remove(cell);
        }
    }

    pub fn transpose(&self) -> Self {
        SuperPipeDream { black: self.black.transpose(), red: self.red.transpose() }
    }

    /// Swaps the colours.
    pub fn complement(&self) -> Self {
        SuperPipeDream { black: self.red.clone(), red: self.black.clone() }
    }

    /// `(P_y^t, P_x^t)`.
    pub fn adjoint(&self) -> Self {
        self.transpose().complement()
    }

    /// `σ^k` applied to both colours.
    pub fn shift(&self, k: i64) -> Self {
        SuperPipeDream { black: self.black.shift(k), red: self.red.shift(k) }
    }

    pub fn weight_exponents(&self) -> ExponentRecord {
        let beta = self.checker_count() - self.permutation().length();
        ExponentRecord {
            beta: beta as u32,
            x: self.black.row_counts(),
            y: self.red.col_counts(),
        }
    }

    /// Text rendering over the bounding box (always containing cell `(1, 1)`).
    pub fn render_text(&self) -> String {
        let (rows, cols) = self.bounds();
        self.render_text_in(rows, cols)
    }

    pub fn bounds(&self) -> ((i64, i64), (i64, i64)) {
        let u = self.union();
        let rows = (u.min_row().unwrap_or(1).min(1), u.max_row().unwrap_or(1).max(1));
        let cols = (u.min_col().unwrap_or(1).min(1), u.max_col().unwrap_or(1).max(1));
        (rows, cols)
    }

    /// Renders rows `rows.0..=rows.1` and columns `cols.0..=cols.1` with
    /// `.` empty, `x` black, `o` red, `*` both and `~` outside `H`.
    pub fn render_text_in(&self, rows: (i64, i64), cols: (i64, i64)) -> String {
        let label_width = |lo: i64, hi: i64| lo.to_string().len().max(hi.to_string().len());
        let cw = label_width(cols.0, cols.1);
        let rw = label_width(rows.0, rows.1);
        let mut s = format!("rows={}..{} cols={}..{}\n", rows.0, rows.1, cols.0, cols.1);
        let _ = write!(s, "{:rw$}", "");
        for j in cols.0..=cols.1 {
            let _ = write!(s, " {j:>cw$}");
        }
        s.push('\n');
        for i in rows.0..=rows.1 {
            let _ = write!(s, "{i:>rw$}");
            for j in cols.0..=cols.1 {
                let glyph = if !in_half_plane((i, j)) {
                    '~'
                } else {
                    match self.at((i, j)) {
                        Checkers { black: false, red: false } => '.',
                        Checkers { black: true, red: false } => 'x',
                        Checkers { black: false, red: true } => 'o',
                        Checkers { black: true, red: true } => '*',
                    }
                };
                let _ = write!(s, " {glyph:>cw$}");
            }
            s.push('\n');
        }
        s
    }

    /// Inverse of [`render_text_in`](Self::render_text_in).
    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::argument(format!("diagram text: {msg}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let range = |key: &str| -> Result<(i64, i64)> {
            let field = header
                .split_whitespace()
                .find_map(|t| t.strip_prefix(key))
                .ok_or_else(|| bad("missing header field"))?;
            let (lo, hi) = field.split_once("..").ok_or_else(|| bad("malformed range"))?;
            Ok((
                lo.parse().map_err(|_| bad("malformed range"))?,
                hi.parse().map_err(|_| bad("malformed range"))?,
            ))
        };
        let rows = range("rows=")?;
        let cols = range("cols=")?;
        lines.next().ok_or_else(|| bad("missing column labels"))?;
        let mut black = Vec::new();
        let mut red = Vec::new();
        for i in rows.0..=rows.1 {
            let line = lines.next().ok_or_else(|| bad("missing row"))?;
            let mut tokens = line.split_whitespace();
            let label: i64 = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("missing row label"))?;
            if label != i {
                return Err(bad("row labels out of order"));
            }
            for j in cols.0..=cols.1 {
                match tokens.next().ok_or_else(|| bad("short row"))? {
                    "." | "~" => {}
                    "x" => black.push((i, j)),
                    "o" => red.push((i, j)),
                    "*" => {
                        black.push((i, j));
                        red.push((i, j));
                    }
                    t => return Err(bad(&format!("unknown glyph {t:?}"))),
                }
            }
        }
        Self::from_cells(black, red)
    }

    /// Wiring rendering: `+` black cross, `#` red cross, `@` both, `/` bump
    /// tile, `,` boundary elbow, blank outside.
    pub fn render_wiring(&self) -> String {
        let ((r0, r1), (c0, c1)) = self.bounds();
        let mut s = String::new();
        for i in r0..=r1 {
            for j in c0..=c1 {
                let d = i + j - 1;
                let glyph = if d < 0 {
                    ' '
                } else if d == 0 {
                    ','
                } else {
                    match self.at((i, j)) {
                        Checkers { black: false, red: false } => '/',
                        Checkers { black: true, red: false } => '+',
                        Checkers { black: false, red: true } => '#',
                        Checkers { black: true, red: true } => '@',
                    }
                };
                s.push(glyph);
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::argument(format!("diagram JSON: {e}")))
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    black: Vec<[i64; 2]>,
    #[serde(default)]
    red: Vec<[i64; 2]>,
}

impl Serialize for SuperPipeDream {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            black: self.black.cells().map(|(i, j)| [i, j]).collect(),
            red: self.red.cells().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperPipeDream {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(d)?;
        SuperPipeDream::from_cells(
            raw.black.into_iter().map(|[i, j]| (i, j)),
            raw.red.into_iter().map(|[i, j]| (i, j)),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl From<PipeDream> for SuperPipeDream {
    fn from(black: PipeDream) -> Self {
        SuperPipeDream { black, red: PipeDream::empty() }
    }
}
