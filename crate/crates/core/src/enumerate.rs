//! Exhaustive generators for pipe dreams, super pipe dreams and 0/1 matrices.
//!
//! Every generator is lazy and yields in lexicographic order of the
//! row-major cell list. Searches are pruned by Bruhat order: the Demazure
//! product of a subword lies below the Demazure product of the word.

use crate::diagram::{Cell, PipeDream, SuperPipeDream};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Size caps guarding the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which `PD⁺(w)` with `w ∈ S_n` is searched including non-reduced diagrams.
    pub max_n: usize,
    /// Largest `n` for reduced-only searches.
    pub max_n_reduced: usize,
    /// Largest `m · n` for matrix enumeration.
    pub max_matrix_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 7, max_n_reduced: 8, max_matrix_cells: 20 }
    }
}

impl Limits {
    /// Raises or lowers both permutation caps to `n`.
    pub fn with_max_n(n: usize) -> Self {
        Limits { max_n: n, max_n_reduced: n.max(Self::default().max_n_reduced), ..Self::default() }
    }

    fn check(&self, w: &Permutation, reduced_only: bool) -> Result<()> {
        let cap = if reduced_only { self.max_n_reduced } else { self.max_n };
        if w.size() > cap {
            return Err(Error::resource(format!("pipe dreams of a permutation in S_{}", w.size()), cap));
        }
        Ok(())
    }
}

/// `n` with `w ∈ S_n`, at least 1.
fn rank(w: &Permutation) -> i64 {
    w.size().max(1) as i64
}

/// `{(i, j) : i, j ≥ 1, i + j - 1 ≤ n - 1}` in row-major order.
pub fn staircase(n: i64) -> Vec<Cell> {
    (1..n).flat_map(|i| (1..=n - i).map(move |j| (i, j))).collect()
}

/// `{(i, j) : 1 ≤ i ≤ rows, 1 ≤ i + j - 1 ≤ n - 1}` in row-major order.
pub fn stable_region(n: i64, rows: i64) -> Vec<Cell> {
    (1..=rows).flat_map(|i| (2 - i..=n - i).map(move |j| (i, j))).collect()
}

/// All subsets of `region` whose Demazure product is `target`.
pub struct SubsetSearch {
    region: Vec<Cell>,
    target: Permutation,
    reduced_only: bool,
    stack: Vec<(Vec<Cell>, usize)>,
    pending: Option<PipeDream>,
}

impl SubsetSearch {
    pub fn new(region: Vec<Cell>, target: Permutation, reduced_only: bool) -> Self {
        let mut s = SubsetSearch { region, target, reduced_only, stack: vec![(Vec::new(), 0)], pending: None };
        if s.target.is_identity() {
            s.pending = Some(PipeDream::empty());
        }
        s
    }

    /// `(feasible, complete)` for a partial subset.
    fn judge(&self, cells: &[Cell]) -> (bool, bool) {
        if self.reduced_only && cells.len() > self.target.length() {
            return (false, false);
        }
        let p = PipeDream::new(cells.iter().copied()).expect("region lies in H");
        let w = p.permutation();
        if !w.bruhat_le(&self.target) {
            return (false, false);
        }
        let complete = w == self.target && (!self.reduced_only || w.length() == p.len());
        (true, complete)
    }
}

impl Iterator for SubsetSearch {
    type Item = PipeDream;

    fn next(&mut self) -> Option<PipeDream> {
        if let Some(p) = self.pending.take() {
            return Some(p);
        }
        loop {
            let (set, next) = self.stack.last_mut()?;
            if *next >= self.region.len() {
                self.stack.pop();
                continue;
            }
            let k = *next;
            *next += 1;
            let mut child = set.clone();
            child.push(self.region[k]);
            let (feasible, complete) = self.judge(&child);
            if feasible {
                self.stack.push((child.clone(), k + 1));
                if complete {
                    return Some(PipeDream::new(child).expect("region lies in H"));
                }
            }
        }
    }
}

/// `PD⁺(w)`, or `PD₀⁺(w)` when `reduced_only`.
pub fn pd_plus(w: &Permutation, reduced_only: bool, limits: &Limits) -> Result<SubsetSearch> {
    limits.check(w, reduced_only)?;
    Ok(SubsetSearch::new(staircase(rank(w)), w.clone(), reduced_only))
}

/// Stable pipe dreams for `w` confined to rows `1..=rows`.
pub fn stable(w: &Permutation, rows: i64, reduced_only: bool, limits: &Limits) -> Result<SubsetSearch> {
    limits.check(w, reduced_only)?;
    Ok(SubsetSearch::new(stable_region(rank(w), rows), w.clone(), reduced_only))
}

/// All colourings of `q`: each cross black, red, or (unless `reduced_only`) both.
pub fn colourings(q: PipeDream, reduced_only: bool) -> impl Iterator<Item = SuperPipeDream> {
    let cells: Vec<Cell> = q.cells().collect();
    let radix: u64 = if reduced_only { 2 } else { 3 };
    let total = radix.pow(cells.len() as u32);
    (0..total).map(move |mut code| {
        let mut black = Vec::new();
        let mut red = Vec::new();
        for &c in cells.iter().rev() {
            match code % radix {
                0 => black.push(c),
                1 => red.push(c),
                _ => {
                    black.push(c);
                    red.push(c);
                }
            }
            code /= radix;
        }
        SuperPipeDream::from_cells(black, red).expect("cells lie in H")
    })
}

/// `SPD⁺(w)`, or `SPD₀⁺(w)` when `reduced_only`.
pub fn spd_plus(
    w: &Permutation,
    reduced_only: bool,
    limits: &Limits,
) -> Result<impl Iterator<Item = SuperPipeDream>> {
    Ok(pd_plus(w, reduced_only, limits)?.flat_map(move |q| colourings(q, reduced_only)))
}

/// All `m × n` 0/1 matrices, in lexicographic order of their row-major entries.
pub fn binary_matrices(
    m: usize,
    n: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = Vec<Vec<u8>>>> {
    let cells = m * n;
    if cells > limits.max_matrix_cells {
        return Err(Error::resource(format!("{m}x{n} binary matrices"), limits.max_matrix_cells));
    }
    Ok((0u64..1 << cells).map(move |code| {
        (0..m)
            .map(|i| (0..n).map(|j| (code >> (cells - 1 - (i * n + j)) & 1) as u8).collect())
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Reference enumeration: every subset of the region, no pruning.
    fn brute(region: &[Cell], w: &Permutation, reduced_only: bool) -> Vec<PipeDream> {
        let mut out: Vec<Vec<Cell>> = Vec::new();
        for mask in 0u64..1 << region.len() {
            let cells: Vec<Cell> =
                region.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &c)| c).collect();
            let q = PipeDream::new(cells.iter().copied()).unwrap();
            if q.permutation() == *w && (!reduced_only || q.is_reduced()) {
                out.push(cells);
            }
        }
        out.sort();
        out.into_iter().map(|c| PipeDream::new(c).unwrap()).collect()
    }

    #[test]
    fn search_matches_brute_force_on_s4() {
        let limits = Limits::default();
        for w in Permutation::all(4) {
            for reduced_only in [false, true] {
                let fast: Vec<_> = pd_plus(&w, reduced_only, &limits).unwrap().collect();
                assert_eq!(fast, brute(&staircase(4), &w, reduced_only), "{w} {reduced_only}");
            }
        }
    }

    #[test]
    fn stable_search_matches_brute_force() {
        let limits = Limits::default();
        for w in Permutation::all(3) {
            let fast: Vec<_> = stable(&w, 3, false, &limits).unwrap().collect();
            assert_eq!(fast, brute(&stable_region(3, 3), &w, false), "{w}");
        }
    }

    #[test]
    fn reduced_counts() {
        let limits = Limits::default();
        // 𝔖_{1432}(1,1,1,...) = 5 reduced pipe dreams
        assert_eq!(pd_plus(&p("1432"), true, &limits).unwrap().count(), 5);
        assert_eq!(pd_plus(&p("4321"), false, &limits).unwrap().count(), 1);
        assert_eq!(pd_plus(&Permutation::identity(), false, &limits).unwrap().count(), 1);
        // non-reduced: s_1 can be any nonempty subset of {(1,1)}
        assert_eq!(pd_plus(&p("21"), false, &limits).unwrap().count(), 1);
        assert_eq!(pd_plus(&p("132"), false, &limits).unwrap().count(), 3);
    }

    #[test]
    fn colouring_counts() {
        let limits = Limits::default();
        assert_eq!(spd_plus(&p("21"), false, &limits).unwrap().count(), 3);
        assert_eq!(spd_plus(&p("132"), true, &limits).unwrap().count(), 4);
        for w in spd_plus(&p("4321"), true, &limits).unwrap() {
            assert!(w.is_reduced());
            assert_eq!(w.permutation(), p("4321"));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let limits = Limits::default();
        assert!(pd_plus(&p("12345687"), false, &limits).is_err());
        assert!(pd_plus(&p("12345687"), true, &limits).is_ok());
        assert!(binary_matrices(5, 5, &limits).is_err());
    }

    #[test]
    fn matrices_are_lexicographic() {
        let all: Vec<_> = binary_matrices(2, 2, &Limits::default()).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[1], vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(all[15], vec![vec![1, 1], vec![1, 1]]);
    }
}
