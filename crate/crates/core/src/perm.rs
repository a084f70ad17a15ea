//! Finitary permutations of the positive integers.
//!
//! A [`Permutation`] is stored by its minimal one-line prefix: the longest
//! prefix after which every value is a fixed point is trimmed, so equality
//! is structural and `S_n` embeds in `S_{n+1}` for free.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, 2, ...}` fixing all but finitely many points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    one_line: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { one_line: Vec::new() }
    }

    /// Builds a permutation from one-line notation, trimming trailing fixed points.
    pub fn from_one_line(values: &[u32]) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::argument(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self::trimmed(values.to_vec()))
    }

    fn trimmed(mut one_line: Vec<u32>) -> Self {
        while let Some(&last) = one_line.last() {
            if last as usize == one_line.len() {
                one_line.pop();
            } else {
                break;
            }
        }
        Permutation { one_line }
    }

    /// The simple transposition `s_i` exchanging `i` and `i + 1`.
    pub fn simple(i: u32) -> Self {
        assert!(i >= 1, "simple transpositions are indexed from 1");
        let mut one_line: Vec<u32> = (1..=i + 1).collect();
        one_line.swap(i as usize - 1, i as usize);
        Permutation { one_line }
    }

    /// Inverse of the Lehmer code: `code[i]` counts later values smaller than `w(i+1)`.
    pub fn from_code(code: &[u32]) -> Result<Self> {
        let n = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + c as usize + 1)
            .max()
            .unwrap_or(0);
        let mut unused: Vec<u32> = (1..=n as u32).collect();
        let mut one_line = Vec::with_capacity(n);
        for &c in code {
            if c as usize >= unused.len() {
                return Err(Error::argument(format!("{code:?} is not a Lehmer code")));
            }
            one_line.push(unused.remove(c as usize));
        }
        one_line.extend(unused);
        Ok(Self::trimmed(one_line))
    }

    /// The minimal `n` with `self` in `S_n`; zero for the identity.
    pub fn size(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u32] {
        &self.one_line
    }

    /// One-line notation padded with fixed points to length `n`.
    pub fn one_line_padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.one_line.clone();
        v.extend(v.len() as u32 + 1..=n.max(v.len()) as u32);
        v
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn apply(&self, i: u32) -> u32 {
        match self.one_line.get(i as usize - 1) {
            Some(&v) => v,
            None => i,
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.code().iter().map(|&c| c as usize).sum()
    }

    pub fn code(&self) -> Vec<u32> {
        let w = &self.one_line;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count() as u32)
            .collect()
    }

    /// Right descents `{i : w(i) > w(i+1)}`.
    pub fn descents(&self) -> Vec<u32> {
        self.one_line
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    pub fn has_descent(&self, i: u32) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.one_line.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { one_line: inv }
    }

    /// Ordinary product `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let n = self.size().max(other.size());
        Self::trimmed((1..=n as u32).map(|i| self.apply(other.apply(i))).collect())
    }

    /// `self · s_i`: swaps positions `i` and `i + 1` of the one-line notation.
    pub fn times_simple(&self, i: u32) -> Self {
        let mut v = self.one_line_padded(i as usize + 1);
        v.swap(i as usize - 1, i as usize);
        Self::trimmed(v)
    }

    /// `s_i · self`: swaps the values `i` and `i + 1`.
    pub fn simple_times(&self, i: u32) -> Self {
        let v = self
            .one_line_padded(i as usize + 1)
            .into_iter()
            .map(|x| {
                if x == i {
                    i + 1
                } else if x == i + 1 {
                    i
                } else {
                    x
                }
            })
            .collect();
        Self::trimmed(v)
    }

    /// Demazure product `self * s_i`.
    pub fn demazure_simple(&self, i: u32) -> Self {
        if self.has_descent(i) {
            self.clone()
        } else {
            self.times_simple(i)
        }
    }

    /// Demazure product `s_i * self`.
    pub fn simple_demazure(&self, i: u32) -> Self {
        let inv = self.inverse();
        if inv.has_descent(i) {
            self.clone()
        } else {
            self.simple_times(i)
        }
    }

    /// Demazure product `self * other`.
    pub fn demazure(&self, other: &Permutation) -> Self {
        other
            .reduced_word()
            .into_iter()
            .fold(self.clone(), |acc, i| acc.demazure_simple(i))
    }

    /// Demazure product of a word of simple transpositions, folded left to right.
    pub fn from_word(word: &[u32]) -> Self {
        word.iter()
            .fold(Permutation::identity(), |acc, &i| acc.demazure_simple(i))
    }

    /// Ordinary product of a word of simple transpositions.
    pub fn from_word_ordinary(word: &[u32]) -> Self {
        word.iter()
            .fold(Permutation::identity(), |acc, &i| acc.times_simple(i))
    }

    /// A reduced word, built by peeling off the last right descent.
    pub fn reduced_word(&self) -> Vec<u32> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&d) = w.descents().last() {
            word.push(d);
            w = w.times_simple(d);
        }
        word.reverse();
        word
    }

    /// All reduced words in lexicographic order; fails once more than `cap` exist.
    pub fn reduced_words(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        self.collect_reduced_words(&mut suffix, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn collect_reduced_words(
        &self,
        suffix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
    ) -> Result<()> {
        if self.is_identity() {
            if out.len() >= cap {
                return Err(Error::resource("reduced words", cap));
            }
            out.push(suffix.iter().rev().copied().collect());
            return Ok(());
        }
        for d in self.descents() {
            suffix.push(d);
            self.times_simple(d).collect_reduced_words(suffix, out, cap)?;
            suffix.pop();
        }
        Ok(())
    }

    /// Bruhat order via the rank-matrix criterion.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        let n = self.size().max(other.size());
        let u = self.one_line_padded(n);
        let w = other.one_line_padded(n);
        let mut cu = vec![0i32; n + 2];
        let mut cw = vec![0i32; n + 2];
        for (&ui, &wi) in u.iter().zip(&w) {
            // cu[k] = #{a <= i : u(a) >= k}
            cu[1..=ui as usize].iter_mut().for_each(|c| *c += 1);
            cw[1..=wi as usize].iter_mut().for_each(|c| *c += 1);
            if (1..=n).any(|k| cu[k] > cw[k]) {
                return false;
            }
        }
        true
    }

    /// All elements of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Self::trimmed(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// `w ⊖_m 1`: inserts a new smallest value at position `m + 1`.
    pub fn ominus(&self, m: u32) -> Self {
        let n = self.size().max(m as usize) + 1;
        let v = (1..=n as u32)
            .map(|i| match i.cmp(&(m + 1)) {
                Ordering::Less => self.apply(i) + 1,
                Ordering::Equal => 1,
                Ordering::Greater => self.apply(i - 1) + 1,
            })
            .collect();
        Self::trimmed(v)
    }

    /// The Grassmannian permutation with code `(λ_m, ..., λ_1, 0, ...)`.
    pub fn grass(shape: &Partition, m: u32) -> Result<Self> {
        if shape.len() > m as usize {
            return Err(Error::argument(format!(
                "{shape} has more than {m} parts"
            )));
        }
        let code: Vec<u32> = (1..=m).rev().map(|i| shape.part(i as usize)).collect();
        Self::from_code(&code)
    }

    /// `Grass((n^m), m)`, the permutation of the `m × n` rectangle.
    pub fn bigrass(m: u32, n: u32) -> Self {
        Self::grass(&Partition::rectangle(m, n), m).expect("rectangle has m parts")
    }

    /// The shape `λ` with `self = Grass(λ, m)`, if `Des(self) ⊆ {m}`.
    pub fn grassmannian_shape(&self, m: u32) -> Option<Partition> {
        if self.descents().iter().any(|&d| d != m) {
            return None;
        }
        let code = self.code();
        let parts: Vec<u32> = (1..=m as usize)
            .rev()
            .map(|i| code.get(i - 1).copied().unwrap_or(0))
            .collect();
        Some(Partition::new(parts).expect("Grassmannian code is weakly increasing"))
    }

    /// `(λ, m)` when `self` has at most one descent `m`; the identity reports `m = 0`.
    pub fn is_grassmannian(&self) -> Option<(Partition, u32)> {
        match self.descents().as_slice() {
            [] => Some((Partition::empty(), 0)),
            [m] => self.grassmannian_shape(*m).map(|s| (s, *m)),
            _ => None,
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.one_line.is_empty() {
            return write!(f, "1");
        }
        if self.one_line.len() <= 9 {
            for v in &self.one_line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Parses `4231576` (single digits) or `1,2,10,3,...` (comma separated).
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Option<Vec<u32>> = if s.contains(',') || s.contains(' ') {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let values =
            values.ok_or_else(|| Error::argument(format!("cannot parse permutation {s:?}")))?;
        Self::from_one_line(&values)
    }
}

/// An integer partition with its zero parts removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::argument(format!("{parts:?} is not weakly decreasing")));
        }
        parts.retain(|&p| p > 0);
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition(vec![cols; rows as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` for `i ≥ 1`, zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(1);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    pub fn fits_in_box(&self, rows: u32, cols: u32) -> bool {
        self.len() <= rows as usize && self.part(1) <= cols
    }

    /// All partitions inside the `rows × cols` box, in lexicographic order of parts.
    pub fn in_box(rows: u32, cols: u32) -> Vec<Partition> {
        fn go(rows: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() as u32 == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// The complement of `self` in the `m × n` box, transposed:
    /// `(n - λ_m, ..., n - λ_1)^t`.
    pub fn dagger(&self, m: u32, n: u32) -> Result<Self> {
        if !self.fits_in_box(m, n) {
            return Err(Error::argument(format!("{self} does not fit in a {m}x{n} box")));
        }
        let complement: Vec<u32> = (1..=m as usize).rev().map(|i| n - self.part(i)).collect();
        Ok(Partition::new(complement)?.conjugate())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
