//! Rectification: flowing every red checker north-east of every black one
//! (`rect`) or south-west of it (`corect`), then splitting the result into
//! a pair of pipe dreams.

use std::collections::BTreeSet;

use crate::diagram::{PipeDream, SuperPipeDream};
use crate::error::{Error, Result};
use crate::flow::{y_minus, y_plus};
use crate::perm::Permutation;

/// The output pair of [`rect`] or [`corect`] and the number of flow steps used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectification {
    /// The black checkers after flowing.
    pub v: PipeDream,
    /// The red checkers after flowing, shifted back and transposed.
    pub u: PipeDream,
    pub steps: usize,
}

impl Rectification {
    /// `(∂(U), ∂(V))`.
    pub fn factors(&self) -> (Permutation, Permutation) {
        (self.u.permutation(), self.v.permutation())
    }

    /// `U† = (∅, U^t)`.
    pub fn u_dagger(&self) -> SuperPipeDream {
        SuperPipeDream::new(PipeDream::empty(), self.u.transpose())
    }
}

fn reds_above_blacks(w: &SuperPipeDream) -> bool {
    match (w.red.max_row(), w.black.min_row()) {
        (Some(r), Some(b)) => r < b,
        _ => true,
    }
}

fn reds_below_blacks(w: &SuperPipeDream) -> bool {
    match (w.red.min_row(), w.black.max_row()) {
        (Some(r), Some(b)) => r > b,
        _ => true,
    }
}

/// Applies `Y⁺` until every red checker lies in a row above every black
/// checker. Then `∂(W) = ∂(U)⁻¹ * ∂(V)`.
pub fn rect(w: &SuperPipeDream) -> Result<Rectification> {
    let cap = match (w.red.min_col(), w.black.min_row()) {
        (Some(j0), Some(i0)) => (w.union().max_letter() as i64 - j0 - i0 + 2).max(0) as usize + 8,
        _ => 0,
    };
    let mut cur = w.clone();
    let mut steps = 0;
    while !reds_above_blacks(&cur) {
        if steps == cap {
            return Err(Error::resource("rectification steps", cap));
        }
        cur = y_plus(&cur);
        steps += 1;
    }
    Ok(Rectification { v: cur.black, u: cur.red.shift(steps as i64).transpose(), steps })
}

/// Applies `Y⁻` until every red checker lies in a row below every black
/// checker. Then `∂(W) = ∂(V) * ∂(U^t)`.
pub fn corect(w: &SuperPipeDream) -> Result<Rectification> {
    let cap = match (w.red.max_col(), w.black.max_row()) {
        (Some(c), Some(r)) => (r + c - 1).max(0) as usize + 8,
        _ => 0,
    };
    let mut cur = w.clone();
    let mut steps = 0;
    while !reds_below_blacks(&cur) {
        if steps == cap {
            return Err(Error::resource("co-rectification steps", cap));
        }
        cur = y_minus(&cur);
        steps += 1;
    }
    Ok(Rectification { v: cur.black, u: cur.red.shift(-(steps as i64)).transpose(), steps })
}

/// The super pipe dream `W` with `rect(W) = (v, u)`.
pub fn rect_inverse(v: &PipeDream, u: &PipeDream) -> SuperPipeDream {
    let ut = u.transpose();
    let m = match (ut.max_row(), v.min_row()) {
        (Some(r), Some(b)) => (r - b + 1).max(0),
        _ => 0,
    };
    let mut cur = SuperPipeDream::new(v.clone(), ut.shift(-m));
    for _ in 0..m {
        cur = y_minus(&cur);
    }
    cur
}

/// The super pipe dream `W` with `corect(W) = (v, u)`.
pub fn corect_inverse(v: &PipeDream, u: &PipeDream) -> SuperPipeDream {
    let ut = u.transpose();
    let m = match (ut.min_row(), v.max_row()) {
        (Some(r), Some(b)) => (b - r + 1).max(0),
        _ => 0,
    };
    let mut cur = SuperPipeDream::new(v.clone(), ut.shift(m));
    for _ in 0..m {
        cur = y_plus(&cur);
    }
    cur
}

/// The super pipe dream behind `(I, J) →ᵐ P`: `P` moved one column east,
/// column 1 holding black checkers at rows `I` and red ones at rows `[m] ∖ J`.
pub fn insertion_diagram(p: &PipeDream, rows_i: &[u32], rows_j: &[u32], m: u32) -> Result<SuperPipeDream> {
    if m == 0 {
        return Err(Error::argument("insertion needs m ≥ 1"));
    }
    if !p.is_ordinary() {
        return Err(Error::argument("insertion needs an ordinary pipe dream"));
    }
    if let Some(d) = p.permutation().descents().into_iter().find(|&d| d > m) {
        return Err(Error::argument(format!("descent {d} of the pipe dream exceeds m = {m}")));
    }
    let i_set: BTreeSet<u32> = rows_i.iter().copied().collect();
    let j_set: BTreeSet<u32> = rows_j.iter().copied().collect();
    if let Some(r) = i_set.iter().find(|&&r| r == 0 || r > m) {
        return Err(Error::argument(format!("row {r} of I lies outside 1..={m}")));
    }
    if !j_set.is_subset(&i_set) {
        return Err(Error::argument("J must be a subset of I"));
    }
    let shifted = p.shift_columns(1)?;
    let black = shifted.cells().chain(i_set.iter().map(|&r| (r as i64, 1)));
    let red = (1..=m).filter(|r| !j_set.contains(r)).map(|r| (r as i64, 1));
    SuperPipeDream::from_cells(black, red)
}

/// `(I, J) →ᵐ P`, the black half of the rectified [`insertion_diagram`].
pub fn insert(p: &PipeDream, rows_i: &[u32], rows_j: &[u32], m: u32) -> Result<PipeDream> {
    Ok(rect(&insertion_diagram(p, rows_i, rows_j, m)?)?.v)
}
