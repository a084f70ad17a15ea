//! Column and row flow operators on super pipe dreams.
//!
//! `Y⁺_j` moves every red checker of column `j` into column `j + 1`, one
//! local rewrite at a time starting from the lowest red checker. Each rewrite
//! either swaps two horizontally adjacent cells or runs a *ladder*: the red
//! checker jumps to the top of the occupied run above it, one column east,
//! and the rows in between swap their two cells. `X⁺_i` is the same operator
//! conjugated by the adjoint, so it moves black checkers down a row.

use crate::diagram::{in_half_plane, Cell, Checkers, SuperPipeDream};
use crate::error::{Error, Result};

fn reds_in_column(w: &SuperPipeDream, j: i64) -> impl Iterator<Item = i64> + '_ {
    w.red.cells().filter(move |c| c.1 == j).map(|c| c.0)
}

fn require_red_free(w: &SuperPipeDream, j: i64, op: &str) -> Result<()> {
    match reds_in_column(w, j).next() {
        Some(i) => Err(Error::precondition(format!(
            "{op} needs column {j} free of red checkers, found one at {:?}",
            (i, j)
        ))),
        None => Ok(()),
    }
}

fn swap_cells(w: &mut SuperPipeDream, a: Cell, b: Cell) {
    let (ca, cb) = (w.at(a), w.at(b));
    w.set(a, cb);
    w.set(b, ca);
}

fn first_vacant_above(w: &SuperPipeDream, (i, j): Cell) -> i64 {
    let mut top = i - 1;
    while in_half_plane((top, j)) && !w.at((top, j)).is_empty() {
        top -= 1;
    }
    top
}

/// `Y⁺_j`. Requires column `j + 1` to hold no red checkers.
pub fn y_plus_col(w: &SuperPipeDream, j: i64) -> Result<SuperPipeDream> {
    require_red_free(w, j + 1, "Y+")?;
    let mut out = w.clone();
    while let Some(i) = reds_in_column(&out, j).max() {
        if !out.at((i, j + 1)).is_empty() {
            swap_cells(&mut out, (i, j), (i, j + 1));
            continue;
        }
        let top = first_vacant_above(&out, (i, j));
        let left = out.at((i, j));
        out.set((i, j), Checkers { black: left.black, red: false });
        let corner = out.at((top, j + 1));
        out.set((top, j + 1), Checkers { black: corner.black, red: true });
        for r in top + 1..i {
            swap_cells(&mut out, (r, j), (r, j + 1));
        }
    }
    Ok(out)
}

/// `Y⁻_c`, the inverse of `Y⁺_{c-1}`. Requires column `c - 1` to hold no red checkers.
pub fn y_minus_col(w: &SuperPipeDream, c: i64) -> Result<SuperPipeDream> {
    require_red_free(w, c - 1, "Y-")?;
    let mut out = w.clone();
    while let Some(top) = reds_in_column(&out, c).min() {
        if !out.at((top, c - 1)).is_empty() {
            swap_cells(&mut out, (top, c - 1), (top, c));
            continue;
        }
        let mut bottom = top + 1;
        while !out.at((bottom, c)).is_empty() {
            bottom += 1;
        }
        let corner = out.at((top, c));
        out.set((top, c), Checkers { black: corner.black, red: false });
        let left = out.at((bottom, c - 1));
        out.set((bottom, c - 1), Checkers { black: left.black, red: true });
        for r in top + 1..bottom {
            swap_cells(&mut out, (r, c - 1), (r, c));
        }
    }
    Ok(out)
}

/// `Y⁺_{≥j} = Y⁺_j ∘ Y⁺_{j+1} ∘ ⋯`, returning every intermediate diagram
/// starting with the input.
pub fn y_plus_from_chain(w: &SuperPipeDream, j: i64) -> Result<Vec<SuperPipeDream>> {
    let mut chain = vec![w.clone()];
    if let Some(max) = w.red.max_col() {
        for c in (j..=max).rev() {
            let next = y_plus_col(chain.last().unwrap(), c)?;
            chain.push(next);
        }
    }
    Ok(chain)
}

/// `Y⁺_{≥j}`.
pub fn y_plus_from(w: &SuperPipeDream, j: i64) -> Result<SuperPipeDream> {
    Ok(y_plus_from_chain(w, j)?.pop().unwrap())
}

/// `Y⁺`: `Y⁺_{≥j}` with `j` the leftmost column holding a red checker.
pub fn y_plus(w: &SuperPipeDream) -> SuperPipeDream {
    match w.red.min_col() {
        Some(j) => y_plus_from(w, j).expect("the rightmost red column always has a free neighbour"),
        None => w.clone(),
    }
}

/// The chain of [`y_plus`].
pub fn y_plus_chain(w: &SuperPipeDream) -> Vec<SuperPipeDream> {
    match w.red.min_col() {
        Some(j) => y_plus_from_chain(w, j).expect("the rightmost red column always has a free neighbour"),
        None => vec![w.clone()],
    }
}

/// Inverse of `Y⁺_{≥c-1}`. Requires column `c - 1` to hold no red checkers.
pub fn y_minus_from(w: &SuperPipeDream, c: i64) -> Result<SuperPipeDream> {
    require_red_free(w, c - 1, "Y-")?;
    let mut out = w.clone();
    if let Some(max) = w.red.max_col() {
        for k in c..=max {
            out = y_minus_col(&out, k)?;
        }
    }
    Ok(out)
}

/// `Y⁻`, the inverse of [`y_plus`].
pub fn y_minus(w: &SuperPipeDream) -> SuperPipeDream {
    match w.red.min_col() {
        Some(c) => y_minus_from(w, c).expect("the column left of every red is free"),
        None => w.clone(),
    }
}

/// `X⁺_i`. Requires row `i + 1` to hold no black checkers.
pub fn x_plus_row(w: &SuperPipeDream, i: i64) -> Result<SuperPipeDream> {
    Ok(y_plus_col(&w.adjoint(), i)?.adjoint())
}

/// `X⁻_r`, the inverse of `X⁺_{r-1}`.
pub fn x_minus_row(w: &SuperPipeDream, r: i64) -> Result<SuperPipeDream> {
    Ok(y_minus_col(&w.adjoint(), r)?.adjoint())
}

/// `X⁺_{≥i}`.
pub fn x_plus_from(w: &SuperPipeDream, i: i64) -> Result<SuperPipeDream> {
    Ok(y_plus_from(&w.adjoint(), i)?.adjoint())
}

/// The chain of `X⁺_{≥i}`, starting with the input.
pub fn x_plus_from_chain(w: &SuperPipeDream, i: i64) -> Result<Vec<SuperPipeDream>> {
    Ok(y_plus_from_chain(&w.adjoint(), i)?.into_iter().map(|d| d.adjoint()).collect())
}

pub fn x_plus(w: &SuperPipeDream) -> SuperPipeDream {
    y_plus(&w.adjoint()).adjoint()
}

pub fn x_plus_chain(w: &SuperPipeDream) -> Vec<SuperPipeDream> {
    y_plus_chain(&w.adjoint()).into_iter().map(|d| d.adjoint()).collect()
}

pub fn x_minus_from(w: &SuperPipeDream, r: i64) -> Result<SuperPipeDream> {
    Ok(y_minus_from(&w.adjoint(), r)?.adjoint())
}

pub fn x_minus(w: &SuperPipeDream) -> SuperPipeDream {
    y_minus(&w.adjoint()).adjoint()
}

/// The single-checker step `Y′_j` on a reduced super pipe dream: moves the
/// highest red checker of column `j` one column east.
pub fn y_prime_col(w: &SuperPipeDream, j: i64) -> Result<SuperPipeDream> {
    if !w.is_reduced() {
        return Err(Error::precondition("Y' is defined on reduced super pipe dreams only"));
    }
    Ok(y_prime_col_unchecked(w, j))
}

pub(crate) fn y_prime_col_unchecked(w: &SuperPipeDream, j: i64) -> SuperPipeDream {
    let mut out = w.clone();
    let Some(i) = reds_in_column(w, j).min() else {
        return out;
    };
    if !out.at((i, j + 1)).is_empty() {
        swap_cells(&mut out, (i, j), (i, j + 1));
        return out;
    }
    let top = first_vacant_above(&out, (i, j));
    let left = out.at((i, j));
    out.set((i, j), Checkers { black: left.black, red: false });
    let corner = out.at((top, j + 1));
    out.set((top, j + 1), Checkers { black: corner.black, red: true });
    for r in top + 1..i {
        if out.at((r, j + 1)).is_empty() {
            swap_cells(&mut out, (r, j), (r, j + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PipeDream;
    use proptest::prelude::*;

    /// Builds a two-column block on columns 1, 2 from rows listed top to
    /// bottom starting at row 1; each entry is `left * 10 + right` with
    /// 0 empty, 1 black, 2 red, 3 both.
    fn block(rows: &[u8]) -> SuperPipeDream {
        let mut w = SuperPipeDream::default();
        for (r, &code) in rows.iter().enumerate() {
            for (j, digit) in [(1, code / 10), (2, code % 10)] {
                let c = Checkers { black: digit & 1 == 1, red: digit & 2 == 2 };
                w.set((r as i64 + 1, j), c);
            }
        }
        w
    }

    #[test]
    fn column_flow_blocks() {
        let cases: [([u8; 9], [u8; 9]); 4] = [
            ([0, 10, 21, 20, 11, 10, 21, 11, 20], [2, 1, 12, 2, 11, 1, 12, 11, 0]),
            ([1, 31, 21, 10, 21, 30, 30, 11, 20], [3, 13, 12, 1, 12, 3, 3, 11, 0]),
            // the top cell gains only the red checker; black row counts are preserved
            ([0, 20, 10, 10, 30, 10, 10, 10, 30], [2, 2, 1, 1, 3, 1, 1, 1, 10]),
            ([1, 11, 10, 30, 31, 21, 11, 20, 30], [3, 11, 1, 3, 13, 12, 11, 2, 10]),
        ];
        for (before, after) in cases {
            let got = y_plus_col(&block(&before), 1).unwrap();
            assert_eq!(got, block(&after), "{before:?}");
            assert_eq!(y_minus_col(&got, 2).unwrap(), block(&before));
        }
    }

    #[test]
    fn single_steps_reach_the_column_flow() {
        let states: [[u8; 9]; 5] = [
            [0, 10, 21, 20, 11, 10, 21, 11, 20],
            [0, 10, 12, 20, 11, 10, 21, 11, 20],
            [2, 1, 12, 0, 11, 10, 21, 11, 20],
            [2, 1, 12, 0, 11, 10, 12, 11, 20],
            [2, 1, 12, 2, 11, 1, 12, 11, 0],
        ];
        for pair in states.windows(2) {
            assert_eq!(y_prime_col_unchecked(&block(&pair[0]), 1), block(&pair[1]));
        }
    }

    #[test]
    fn precondition_errors() {
        let w = SuperPipeDream::from_cells([], [(1, 1), (1, 2)]).unwrap();
        assert!(y_plus_col(&w, 1).is_err());
        assert!(y_minus_col(&w, 2).is_err());
        let both = SuperPipeDream::from_cells([(1, 1)], [(1, 1)]).unwrap();
        assert!(y_prime_col(&both, 1).is_err());
    }

    #[test]
    fn red_only_flows_by_inverse_shift() {
        let reds = PipeDream::new([(1, 1), (2, 1), (2, 3), (4, -1)]).unwrap();
        let w = SuperPipeDream::new(PipeDream::empty(), reds);
        assert_eq!(y_plus(&w), w.shift(-1));
        assert_eq!(x_plus(&w), w);
        let b = w.complement();
        assert_eq!(y_plus(&b), b);
        assert_eq!(x_plus(&b), b.shift(1));
    }

    fn spd_strategy() -> impl Strategy<Value = SuperPipeDream> {
        let cell = (-3i64..=8, -3i64..=8).prop_filter("in H", |&c| in_half_plane(c));
        (
            proptest::collection::btree_set(cell.clone(), 0..16),
            proptest::collection::btree_set(cell, 0..16),
        )
            .prop_map(|(b, r)| SuperPipeDream::from_cells(b, r).unwrap())
    }

    proptest! {
        #[test]
        fn flow_is_invertible_and_preserves_invariants(w in spd_strategy()) {
            let f = y_plus(&w);
            prop_assert_eq!(y_minus(&f), w.clone());
            prop_assert_eq!(f.permutation(), w.permutation());
            prop_assert_eq!(f.black.row_counts(), w.black.row_counts());
            let shifted: Vec<(i64, u32)> =
                w.red.col_counts().into_iter().map(|(j, n)| (j + 1, n)).collect();
            prop_assert_eq!(f.red.col_counts().into_iter().collect::<Vec<_>>(), shifted);
            prop_assert_eq!(x_minus(&x_plus(&w)), w);
        }

        #[test]
        fn flow_commutes_with_shift(w in spd_strategy(), k in -3i64..3) {
            prop_assert_eq!(y_plus(&w.shift(k)), y_plus(&w).shift(k));
        }

        #[test]
        fn row_and_column_flow_agree_up_to_shift(w in spd_strategy()) {
            prop_assert_eq!(y_plus(&w).shift(1), x_plus(&w));
        }

        #[test]
        fn single_column_inverse(w in spd_strategy(), j in -3i64..8) {
            prop_assume!(reds_in_column(&w, j + 1).next().is_none());
            let f = y_plus_col(&w, j).unwrap();
            prop_assert_eq!(y_minus_col(&f, j + 1).unwrap(), w);
        }
    }
}
