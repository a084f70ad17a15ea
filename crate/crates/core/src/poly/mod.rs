//! Exact polynomials in `β`, `x_i` and `y_j` with big-integer coefficients,
//! and the pipe-dream generating functions built from them.

pub mod oracle;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::diagram::{ExponentRecord, SuperPipeDream};
use crate::enumerate::{self, Limits};
use crate::error::Result;
use crate::perm::Permutation;

/// A variable of the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Beta,
    X(i64),
    Y(i64),
}

/// `β^beta · Π x_i^{x[i]} · Π y_j^{y[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub beta: u32,
    pub x: BTreeMap<i64, u32>,
    pub y: BTreeMap<i64, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::one();
        match v {
            Var::Beta => m.beta = 1,
            Var::X(i) => {
                m.x.insert(i, 1);
            }
            Var::Y(j) => {
                m.y.insert(j, 1);
            }
        }
        m
    }

    /// Degree in the `x` and `y` variables.
    pub fn xy_degree(&self) -> u32 {
        self.x.values().sum::<u32>() + self.y.values().sum::<u32>()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::Beta => self.beta,
            Var::X(i) => self.x.get(&i).copied().unwrap_or(0),
            Var::Y(j) => self.y.get(&j).copied().unwrap_or(0),
        }
    }

    /// `(variable, exponent)` pairs with nonzero exponent.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        let beta = (self.beta > 0).then_some((Var::Beta, self.beta));
        beta.into_iter()
            .chain(self.x.iter().map(|(&i, &e)| (Var::X(i), e)))
            .chain(self.y.iter().map(|(&j, &e)| (Var::Y(j), e)))
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        out.beta += other.beta;
        for (&i, &e) in &other.x {
            *out.x.entry(i).or_insert(0) += e;
        }
        for (&j, &e) in &other.y {
            *out.y.entry(j).or_insert(0) += e;
        }
        out
    }
}

impl From<ExponentRecord> for Monomial {
    fn from(r: ExponentRecord) -> Self {
        Monomial { beta: r.beta, x: r.x, y: r.y }
    }
}

/// Larger exponents on smaller indices come first.
fn lex_descending(a: &BTreeMap<i64, u32>, b: &BTreeMap<i64, u32>) -> Ordering {
    let keys: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    for k in keys {
        let (ea, eb) = (a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

/// Graded order: total `x, y` degree, then `β` degree, then lexicographic
/// on `x` exponents and on `y` exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.xy_degree()
            .cmp(&other.xy_degree())
            .then(self.beta.cmp(&other.beta))
            .then_with(|| lex_descending(&self.x, &other.x))
            .then_with(|| lex_descending(&self.y, &other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn var_name(v: Var) -> String {
    let indexed = |name: &str, i: i64| {
        if i >= 1 {
            format!("{name}{i}")
        } else {
            format!("{name}({i})")
        }
    };
    match v {
        Var::Beta => "b".to_string(),
        Var::X(i) => indexed("x", i),
        Var::Y(j) => indexed("y", j),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors()
            .map(|(v, e)| if e == 1 { var_name(v) } else { format!("{}^{e}", var_name(v)) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A polynomial over `ℤ` in `β`, `x` and `y`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(BigInt::from(c), Monomial::one())
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(BigInt::one(), Monomial::var(v))
    }

    pub fn x(i: i64) -> Self {
        Self::var(Var::X(i))
    }

    pub fn y(j: i64) -> Self {
        Self::var(Var::Y(j))
    }

    pub fn beta() -> Self {
        Self::var(Var::Beta)
    }

    /// The weight monomial of a super pipe dream.
    pub fn weight(w: &SuperPipeDream) -> Self {
        Self::term(BigInt::one(), w.weight_exponents().into())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `f(v)` for every variable `v` where `f` returns `Some`.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Option<MultiPoly>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut image = Self::one();
            for (v, e) in m.factors() {
                match f(v) {
                    Some(p) => image = &image * &p.pow(e),
                    None => kept = kept.times(&Monomial::var(v).power(e)),
                }
            }
            out += &(&image * &Self::term(c.clone(), kept));
        }
        out
    }

    /// Substitutes the given values for the listed variables.
    pub fn specialize(&self, bindings: &BTreeMap<Var, MultiPoly>) -> Self {
        self.substitute(&|v| bindings.get(&v).cloned())
    }

    pub fn beta_to_zero(&self) -> Self {
        self.substitute(&|v| (v == Var::Beta).then(Self::zero))
    }

    pub fn y_to_zero(&self) -> Self {
        self.substitute(&|v| matches!(v, Var::Y(_)).then(Self::zero))
    }

    /// Every `x_i ↦ 1`.
    pub fn x_to_one(&self) -> Self {
        self.substitute(&|v| matches!(v, Var::X(_)).then(Self::one))
    }

    /// Exchanges `x_i` and `y_i`.
    pub fn swap_xy(&self) -> Self {
        self.substitute(&|v| match v {
            Var::X(i) => Some(Self::y(i)),
            Var::Y(j) => Some(Self::x(j)),
            Var::Beta => None,
        })
    }

    /// `R_k`: `x_k ↦ 0` and `x_{i+1} ↦ x_i` for `i ≥ k`.
    pub fn r_k(&self, k: i64) -> Self {
        self.substitute(&|v| match v {
            Var::X(i) if i == k => Some(Self::zero()),
            Var::X(i) if i > k => Some(Self::x(i - 1)),
            _ => None,
        })
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            match v {
                Var::Beta => m2.beta -= 1,
                Var::X(i) => decrement(&mut m2.x, i),
                Var::Y(j) => decrement(&mut m2.y, j),
            }
            out.add_term(m2, c * BigInt::from(e));
        }
        out
    }

    pub fn x_indices(&self) -> std::collections::BTreeSet<i64> {
        self.terms.keys().flat_map(|m| m.x.keys().copied()).collect()
    }

    /// `∇^(β) = Σ_{i ≥ 1} (1 + β x_i) ∂/∂x_i`.
    pub fn nabla(&self) -> Self {
        let mut out = Self::zero();
        for i in self.x_indices().into_iter().filter(|&i| i >= 1) {
            let factor = &Self::one() + &(&Self::beta() * &Self::x(i));
            out = &out + &(&factor * &self.derivative(Var::X(i)));
        }
        out
    }

    /// Evaluates with `β = 0` and every `x_i = y_j = 1`.
    pub fn total(&self) -> BigInt {
        self.terms.iter().filter(|(m, _)| m.beta == 0).map(|(_, c)| c.clone()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            beta: u32,
            x: Vec<(i64, u32)>,
            y: Vec<(i64, u32)>,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.to_string(),
                beta: m.beta,
                x: m.x.iter().map(|(&i, &e)| (i, e)).collect(),
                y: m.y.iter().map(|(&j, &e)| (j, e)).collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }
}

impl Monomial {
    fn power(&self, e: u32) -> Monomial {
        (0..e).fold(Monomial::one(), |acc, _| acc.times(self))
    }
}

fn decrement(map: &mut BTreeMap<i64, u32>, k: i64) {
    let e = map.get_mut(&k).expect("exponent present");
    *e -= 1;
    if *e == 0 {
        map.remove(&k);
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut out = MultiPoly::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = *m == Monomial::one();
            if abs.is_one() && !constant {
                write!(f, "{m}")?;
            } else if constant {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `e_k^(β)(x_1, ..., x_m) = Σ_{J ⊆ I ⊆ [m], |J| = k} β^{|I| - k} x_I`.
pub fn e_k_beta(k: u32, m: u32) -> MultiPoly {
    let mut by_pairs = MultiPoly::zero();
    for i_mask in 0u32..1 << m {
        let size = i_mask.count_ones();
        let x_i: MultiPoly = (0..m)
            .filter(|b| i_mask >> b & 1 == 1)
            .fold(MultiPoly::one(), |acc, b| &acc * &MultiPoly::x(b as i64 + 1));
        // every J ⊆ I with |J| = k
        let mut j_mask = i_mask;
        loop {
            if j_mask.count_ones() == k {
                by_pairs = &by_pairs + &(&MultiPoly::beta().pow(size - k) * &x_i);
            }
            if j_mask == 0 {
                break;
            }
            j_mask = (j_mask - 1) & i_mask;
        }
    }
    let by_binomials: MultiPoly = (k..=m)
        .map(|r| {
            let e_r = elementary(r, m);
            e_r.scale(&binomial(r, k)) * (&MultiPoly::beta().pow(r - k))
        })
        .sum();
    assert_eq!(by_pairs, by_binomials, "e_k^(β) expansions disagree");
    by_pairs
}

/// Plain elementary symmetric polynomial `e_r(x_1, ..., x_m)`.
pub fn elementary(r: u32, m: u32) -> MultiPoly {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() == r)
        .map(|mask| {
            (0..m)
                .filter(|b| mask >> b & 1 == 1)
                .fold(MultiPoly::one(), |acc, b| &acc * &MultiPoly::x(b as i64 + 1))
        })
        .sum()
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl Mul<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        &self * rhs
    }
}

/// `𝔖_w(x) = Σ_{P ∈ PD₀⁺(w)} x^P`.
pub fn schubert(w: &Permutation, limits: &Limits) -> Result<MultiPoly> {
    Ok(enumerate::pd_plus(w, true, limits)?.map(|p| MultiPoly::weight(&p.into())).sum())
}

/// `𝔊_w(x) = Σ_{P ∈ PD⁺(w)} β^{|P| - ℓ(w)} x^P`.
pub fn grothendieck(w: &Permutation, limits: &Limits) -> Result<MultiPoly> {
    Ok(enumerate::pd_plus(w, false, limits)?.map(|p| MultiPoly::weight(&p.into())).sum())
}

/// `𝔖_w(x; y)`, summed over reduced super pipe dreams.
pub fn double_schubert(w: &Permutation, limits: &Limits) -> Result<MultiPoly> {
    Ok(enumerate::spd_plus(w, true, limits)?.map(|p| MultiPoly::weight(&p)).sum())
}

/// `𝔊_w(x; y)`, summed over all super pipe dreams.
pub fn double_grothendieck(w: &Permutation, limits: &Limits) -> Result<MultiPoly> {
    Ok(enumerate::spd_plus(w, false, limits)?.map(|p| MultiPoly::weight(&p)).sum())
}

/// Truncation to rows `1..=rows` of the stable Grothendieck polynomial, or of
/// the stable Schubert polynomial when `reduced_only`.
pub fn stable_truncation(w: &Permutation, rows: i64, reduced_only: bool, limits: &Limits) -> Result<MultiPoly> {
    Ok(enumerate::stable(w, rows, reduced_only, limits)?.map(|p| MultiPoly::weight(&p.into())).sum())
}
