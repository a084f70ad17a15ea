//! Reverse semistandard tableaux and their pipe-dream models.
//!
//! A reverse tableau has weakly decreasing rows and strictly decreasing
//! columns. For a reduced pipe dream of a Grassmannian permutation with
//! descent `m`, [`tab`] records in row `a` the rows of the crosses that pipe
//! `m - a + 1` passes through horizontally, read from west to east.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{Cell, PipeDream, SuperPipeDream};
use crate::error::{Error, Result};
use crate::flow::y_prime_col;
use crate::perm::{Partition, Permutation};
use crate::poly::MultiPoly;
use crate::rectify::rect;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RevTableau {
    rows: Vec<Vec<i64>>,
}

impl RevTableau {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let t = RevTableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::argument(format!("not a reverse tableau ({msg}): {self:?}")));
        if self.rows.iter().any(|r| r.is_empty()) {
            return bad("empty row");
        }
        if self.rows.windows(2).any(|p| p[0].len() < p[1].len()) {
            return bad("row lengths increase");
        }
        if self.rows.iter().any(|r| r.windows(2).any(|p| p[0] < p[1])) {
            return bad("row increases");
        }
        for (a, row) in self.rows.iter().enumerate().skip(1) {
            if row.iter().enumerate().any(|(b, &e)| self.rows[a - 1][b] <= e) {
                return bad("column not strictly decreasing");
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// A single strictly decreasing column holding `values`.
    pub fn column(values: &[i64]) -> Self {
        let mut v = values.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.dedup();
        RevTableau { rows: v.into_iter().map(|e| vec![e]).collect() }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect()).expect("validated")
    }

    /// Entries of column `b` (0-based) from top to bottom.
    pub fn column_entries(&self, b: usize) -> Vec<i64> {
        self.rows.iter().filter_map(|r| r.get(b).copied()).collect()
    }

    /// `Π x_{T(a, b)}`.
    pub fn weight(&self) -> MultiPoly {
        self.rows.iter().flatten().fold(MultiPoly::one(), |acc, &e| &acc * &MultiPoly::x(e))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.rows).expect("rows serialize")
    }

    /// One row per line, entries separated by spaces.
    pub fn render_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let rows: Option<Vec<Vec<i64>>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(|t| t.parse().ok()).collect())
            .collect();
        Self::new(rows.ok_or_else(|| Error::argument("tableau text: non-integer entry"))?)
    }

    fn negated(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.iter().map(|e| -e).collect()).collect()
    }
}

impl fmt::Display for RevTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join(" / "))
    }
}

/// All reverse tableaux of shape `shape` with entries in `[1, m]`.
pub fn rssyt(shape: &Partition, m: i64) -> Vec<RevTableau> {
    fn fill(shape: &[u32], m: i64, cell: usize, rows: &mut Vec<Vec<i64>>, out: &mut Vec<RevTableau>) {
        let total: usize = shape.iter().map(|&p| p as usize).sum();
        if cell == total {
            out.push(RevTableau { rows: rows.clone() });
            return;
        }
        let (mut a, mut b, mut seen) = (0, 0, 0);
        for (i, &len) in shape.iter().enumerate() {
            if cell < seen + len as usize {
                a = i;
                b = cell - seen;
                break;
            }
            seen += len as usize;
        }
        let mut hi = m;
        if b > 0 {
            hi = hi.min(rows[a][b - 1]);
        }
        if a > 0 {
            hi = hi.min(rows[a - 1][b] - 1);
        }
        if b == 0 {
            rows.push(Vec::new());
        }
        for e in 1..=hi {
            rows[a].push(e);
            fill(shape, m, cell + 1, rows, out);
            rows[a].pop();
        }
        if b == 0 {
            rows.pop();
        }
    }
    let mut out = Vec::new();
    fill(shape.parts(), m, 0, &mut Vec::new(), &mut out);
    out
}

/// For each cross of a reduced Grassmannian pipe dream, its tableau cell `(a, b)` (1-based).
fn cells_of(p: &PipeDream, m: u32) -> Result<BTreeMap<Cell, (usize, usize)>> {
    if !p.is_reduced() {
        return Err(Error::precondition("tab needs a reduced pipe dream"));
    }
    let w = p.permutation();
    if w.descents().iter().any(|&d| d != m) {
        return Err(Error::precondition(format!("{w} is not Grassmannian with descent {m}")));
    }
    let m = m as i64;
    let mut out = BTreeMap::new();
    let mut by_row: BTreeMap<usize, Vec<(i64, Cell)>> = BTreeMap::new();
    for (cell, (h, v)) in p.pipe_labels() {
        let (h, v) = (h as i64, v as i64);
        if h > m || v <= m {
            return Err(Error::internal(format!("cross {cell:?} joins pipes {h} and {v}")));
        }
        let a = (m - h + 1) as usize;
        out.insert(cell, (a, (v - m) as usize));
        by_row.entry(a).or_default().push((cell.1, cell));
    }
    // the vertical pipe index must agree with west-to-east order along the horizontal pipe
    for crosses in by_row.values_mut() {
        crosses.sort();
        for (b, (_, cell)) in crosses.iter().enumerate() {
            if out[cell].1 != b + 1 {
                return Err(Error::internal(format!("cross {cell:?} is out of order on its pipe")));
            }
        }
    }
    Ok(out)
}

fn assemble<T: Clone>(cells: &BTreeMap<(usize, usize), T>) -> Result<Vec<Vec<T>>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (&(a, b), v) in cells {
        if rows.len() < a {
            rows.resize(a, Vec::new());
        }
        if rows[a - 1].len() + 1 != b {
            return Err(Error::internal("tableau cells do not form a shape"));
        }
        rows[a - 1].push(v.clone());
    }
    if rows.iter().any(Vec::is_empty) {
        return Err(Error::internal("tableau has an empty row"));
    }
    Ok(rows)
}

/// `tab(P)` for a reduced pipe dream of a Grassmannian permutation with descent `m`.
pub fn tab(p: &PipeDream, m: u32) -> Result<RevTableau> {
    let cells: BTreeMap<(usize, usize), i64> =
        cells_of(p, m)?.into_iter().map(|(c, ab)| (ab, c.0)).collect();
    RevTableau::new(assemble(&cells)?)
}

/// The reduced pipe dream with `tab(P, m) = t`: cell `(a, b)` holding `r`
/// becomes the cross at row `r`, letter `m - a + b`.
pub fn tab_inverse(t: &RevTableau, m: u32) -> Result<PipeDream> {
    let m = m as i64;
    let mut cells = Vec::new();
    for (a, row) in t.rows().iter().enumerate() {
        for (b, &r) in row.iter().enumerate() {
            let (a, b) = (a as i64 + 1, b as i64 + 1);
            cells.push((r, m - a + b - r + 1));
        }
    }
    let p = PipeDream::new(cells)?;
    let expected = Permutation::grass(&t.shape(), m as u32)?;
    if p.permutation() != expected || !p.is_reduced() {
        return Err(Error::precondition(format!("{t} does not come from a pipe dream of {expected}")));
    }
    Ok(p)
}

/// An entry of a two-coloured tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColouredEntry {
    pub label: i64,
    pub red: bool,
}

/// `tab` of a reduced Grassmannian super pipe dream, keeping each cross's colour.
pub fn tab_coloured(w: &SuperPipeDream, m: u32) -> Result<Vec<Vec<ColouredEntry>>> {
    let cells: BTreeMap<(usize, usize), ColouredEntry> = cells_of(&w.union(), m)?
        .into_iter()
        .map(|(c, ab)| (ab, ColouredEntry { label: c.0, red: w.red.contains(c) }))
        .collect();
    assemble(&cells)
}

/// Predicts `tab(Y′_j P)` from `tab(P)` by a single sliding step at the
/// cell `(a, b)` (0-based) holding the moved red cross.
pub fn slide_step(t: &[Vec<ColouredEntry>], (a, b): (usize, usize)) -> Vec<Vec<ColouredEntry>> {
    let mut out = t.to_vec();
    let label = t[a][b].label;
    let get = |r: usize, c: usize| t.get(r).and_then(|row| row.get(c)).map(|e| e.label);
    if get(a, b + 1) == Some(label) {
        out[a][b] = t[a][b + 1];
        out[a][b + 1] = ColouredEntry { label, red: true };
        return out;
    }
    let mut k = 0;
    while get(a + k + 1, b) == Some(label - k as i64 - 1) {
        k += 1;
    }
    for r in a..a + k {
        out[r][b] = t[r + 1][b];
    }
    out[a + k][b] = ColouredEntry { label: label - k as i64 - 1, red: true };
    out
}

/// Applies `Y′_j` and checks the result against [`slide_step`].
pub fn yprime_tableau_step(w: &SuperPipeDream, j: i64, m: u32) -> Result<Vec<Vec<ColouredEntry>>> {
    let before = tab_coloured(w, m)?;
    let next = y_prime_col(w, j)?;
    let after = tab_coloured(&next, m)?;
    let Some(i) = w.red.cells().filter(|c| c.1 == j).map(|c| c.0).min() else {
        return Ok(after);
    };
    let (a, b) = cells_of(&w.union(), m)?[&(i, j)];
    let predicted = slide_step(&before, (a - 1, b - 1));
    if predicted != after {
        return Err(Error::internal(format!(
            "sliding rule disagrees with Y' at column {j}: predicted {predicted:?}, got {after:?}"
        )));
    }
    Ok(after)
}

/// Product of reverse tableaux: reverse the order, row-insert the reading
/// word of `b` (rows bottom to top) into `a`, reverse back.
pub fn plactic_product(a: &RevTableau, b: &RevTableau) -> RevTableau {
    let mut rows = a.negated();
    for row in b.negated().iter().rev() {
        for &e in row {
            row_insert(&mut rows, e);
        }
    }
    RevTableau::new(rows.iter().map(|r| r.iter().map(|e| -e).collect()).collect())
        .expect("insertion preserves tableau shape")
}

/// Schensted row insertion into a semistandard tableau (rows weakly increasing).
fn row_insert(rows: &mut Vec<Vec<i64>>, mut x: i64) {
    for row in rows.iter_mut() {
        match row.iter().position(|&e| e > x) {
            Some(p) => x = std::mem::replace(&mut row[p], x),
            None => {
                row.push(x);
                return;
            }
        }
    }
    rows.push(vec![x]);
}

/// A 0/1 matrix, rows indexed from 1.
pub type BinaryMatrix = Vec<Vec<u8>>;

fn dims(a: &BinaryMatrix) -> (usize, usize) {
    (a.len(), a.first().map_or(0, Vec::len))
}

fn column_of(a: &BinaryMatrix, j: usize) -> RevTableau {
    let ones: Vec<i64> = (0..a.len()).filter(|&i| a[i][j] == 1).map(|i| i as i64 + 1).collect();
    RevTableau::column(&ones)
}

/// `C_r * ⋯ * C_n` for the column tableaux of `a`, starting at column `r` (0-based).
fn suffix_product(a: &BinaryMatrix, r: usize) -> RevTableau {
    let (_, n) = dims(a);
    (r..n).fold(RevTableau::empty(), |acc, j| plactic_product(&acc, &column_of(a, j)))
}

/// `C_1 * ⋯ * C_n` where `C_j` is the set of rows holding a 1 in column `j`.
pub fn ins(a: &BinaryMatrix) -> RevTableau {
    suffix_product(a, 0)
}

/// The dual recording tableau: cell `(i, j)` holds the largest `r` with
/// `(j, i)` inside the shape of `C_r * ⋯ * C_n`.
pub fn rec(a: &BinaryMatrix) -> RevTableau {
    let (_, n) = dims(a);
    let shapes: Vec<Partition> = (0..n).map(|r| suffix_product(a, r).shape()).collect();
    let target = ins(a).shape().conjugate();
    let rows = (1..=target.len())
        .map(|i| {
            (1..=target.part(i) as usize)
                .map(|j| {
                    (1..=n)
                        .rev()
                        .find(|&r| shapes[r - 1].part(j) as usize >= i)
                        .expect("the full product contains the cell") as i64
                })
                .collect()
        })
        .collect();
    RevTableau { rows }
}

/// `A†`: transpose, then flip every bit.
pub fn a_dagger(a: &BinaryMatrix) -> BinaryMatrix {
    let (m, n) = dims(a);
    (0..n).map(|j| (0..m).map(|i| 1 - a[i][j]).collect()).collect()
}

/// Column `j` of the result holds the values of `[n]` missing from column
/// `m + 1 - j` of `t`.
pub fn overline(t: &RevTableau, m: usize, n: i64) -> Result<RevTableau> {
    let columns: Vec<Vec<i64>> = (1..=m)
        .map(|j| {
            let present = t.column_entries(m - j);
            (1..=n).rev().filter(|v| !present.contains(v)).collect()
        })
        .collect();
    let height = columns.iter().map(Vec::len).max().unwrap_or(0);
    let rows = (0..height)
        .map(|r| columns.iter().filter_map(|c| c.get(r).copied()).collect())
        .collect();
    RevTableau::new(rows)
}

/// The super pipe dream on `[m] × [n]` with black crosses at the 1s and red at the 0s.
pub fn matrix_diagram(a: &BinaryMatrix) -> SuperPipeDream {
    let mut black = Vec::new();
    let mut red = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            let cell = (i as i64 + 1, j as i64 + 1);
            if entry == 1 {
                black.push(cell);
            } else {
                red.push(cell);
            }
        }
    }
    SuperPipeDream::from_cells(black, red).expect("positive cells lie in H")
}

/// `(tab(V), tab(U))` for `(V, U) = rect` of the matrix's diagram.
pub fn rsk_prime(a: &BinaryMatrix) -> Result<(RevTableau, RevTableau)> {
    let (m, n) = dims(a);
    let r = rect(&matrix_diagram(a))?;
    Ok((tab(&r.v, m as u32)?, tab(&r.u, n as u32)?))
}

/// Parses `11000;01101` (rows separated by `;`, `/` or newlines).
pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let a: BinaryMatrix = text
        .split([';', '/', '\n'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::argument(format!("matrix entry {c:?} is not 0 or 1"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if a.windows(2).any(|p| p[0].len() != p[1].len()) {
        return Err(Error::argument("matrix rows differ in length"));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[i64]]) -> RevTableau {
        RevTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(RevTableau::new(vec![vec![1, 2]]).is_err());
        assert!(RevTableau::new(vec![vec![2], vec![2]]).is_err());
        assert!(RevTableau::new(vec![vec![2], vec![1, 1]]).is_err());
        assert!(RevTableau::new(vec![vec![3, 3], vec![1]]).is_ok());
    }

    #[test]
    fn text_roundtrip() {
        let x = t(&[&[4, 3, 3, 1], &[3, 2], &[1]]);
        assert_eq!(x.render_text(), "4 3 3 1\n3 2\n1\n");
        assert_eq!(RevTableau::parse_text(&x.render_text()).unwrap(), x);
    }

    #[test]
    fn rssyt_counts() {
        // s_(1)(x1,x2,x3) has 3 terms; s_(2,1)(x1,x2,x3) has 8
        assert_eq!(rssyt(&Partition::new(vec![1]).unwrap(), 3).len(), 3);
        assert_eq!(rssyt(&Partition::new(vec![2, 1]).unwrap(), 3).len(), 8);
        assert_eq!(rssyt(&Partition::empty(), 3), vec![RevTableau::empty()]);
    }

    #[test]
    fn product_with_single_column() {
        let p = plactic_product(&RevTableau::column(&[3]), &t(&[&[4, 3, 3, 1], &[3, 2], &[1]]));
        assert_eq!(p, t(&[&[4, 3, 3, 3, 1], &[3, 2], &[1]]));
    }

    #[test]
    fn product_is_associative_on_columns() {
        let cols = [RevTableau::column(&[1, 3]), RevTableau::column(&[2]), RevTableau::column(&[1, 2, 3])];
        let left = plactic_product(&plactic_product(&cols[0], &cols[1]), &cols[2]);
        let right = plactic_product(&cols[0], &plactic_product(&cols[1], &cols[2]));
        assert_eq!(left, right);
    }

    #[test]
    fn tab_roundtrip_in_box() {
        for shape in Partition::in_box(3, 3) {
            for x in rssyt(&shape, 3) {
                let p = tab_inverse(&x, 3).unwrap();
                assert_eq!(tab(&p, 3).unwrap(), x);
            }
        }
    }

    #[test]
    fn overline_complements_columns() {
        let x = t(&[&[3, 2], &[1]]);
        assert_eq!(overline(&x, 2, 3).unwrap(), t(&[&[3, 2], &[1]]));
    }

    #[test]
    fn dagger_of_matrix() {
        let a = vec![vec![1, 0, 1], vec![0, 0, 1]];
        assert_eq!(a_dagger(&a), vec![vec![0, 1], vec![1, 1], vec![0, 0]]);
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix("10;01").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert!(parse_matrix("10;0").is_err());
        assert!(parse_matrix("12").is_err());
    }
}
