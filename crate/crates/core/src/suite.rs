//! Machine-checkable forms of the identities proved by rectification.
//!
//! Every `check_*` function compares both sides of an identity as exact
//! polynomials and, where the identity has a bijective proof, replays the
//! bijection case by case. Results come back as [`Report`]s.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{in_half_plane, Cell, PipeDream, SuperPipeDream};
use crate::enumerate::{self, binary_matrices, pd_plus, spd_plus, Limits};
use crate::error::{Error, Result};
use crate::flow::{x_plus, x_plus_from, y_plus};
use crate::perm::{Partition, Permutation};
use crate::poly::oracle::divided_difference_schubert;
use crate::poly::{self, MultiPoly};
use crate::rectify::{corect, corect_inverse, insert, insertion_diagram, rect, rect_inverse};
use crate::tableau::{a_dagger, ins, overline, plactic_product, rec, rsk_prime, rssyt, tab, tab_inverse, RevTableau};

/// At most this many failure payloads are kept per report.
const MAX_PAYLOADS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not an assertion; a nonzero count is reported but does not fail.
    Finding,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub identity: String,
    pub params: String,
    pub status: Status,
    pub cases: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl Report {
    fn new(identity: &str, params: impl Into<String>) -> Self {
        Report {
            identity: identity.to_string(),
            params: params.into(),
            status: Status::Pass,
            cases: 0,
            violations: 0,
            lhs: None,
            rhs: None,
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, payload: impl Into<String>) {
        self.violations += 1;
        if self.failures.len() < MAX_PAYLOADS {
            self.failures.push(payload.into());
        }
    }

    fn require(&mut self, ok: bool, payload: impl FnOnce() -> String) {
        if !ok {
            self.fail(payload());
        }
    }

    fn compare(&mut self, lhs: &MultiPoly, rhs: &MultiPoly) {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        if lhs != rhs {
            self.fail(format!("lhs - rhs = {}", lhs - rhs));
        }
    }

    fn finish(mut self) -> Self {
        if self.violations > 0 {
            self.status = Status::Fail;
        }
        self
    }

    /// True unless the report is a failure; findings pass.
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
        };
        write!(f, "{status} {} [{}] cases={} violations={}", self.identity, self.params, self.cases, self.violations)?;
        for p in &self.failures {
            write!(f, "\n  {p}")?;
        }
        Ok(())
    }
}

/// Which family of polynomials an identity is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Reduced diagrams only, `β = 0`.
    Schubert,
    Grothendieck,
}

impl Variant {
    fn reduced(self) -> bool {
        self == Variant::Schubert
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Schubert => "schubert",
            Variant::Grothendieck => "grothendieck",
        })
    }
}

fn beta_pow(e: usize) -> MultiPoly {
    MultiPoly::beta().pow(e as u32)
}

fn single(w: &Permutation, variant: Variant, limits: &Limits) -> Result<MultiPoly> {
    match variant {
        Variant::Schubert => poly::schubert(w, limits),
        Variant::Grothendieck => poly::grothendieck(w, limits),
    }
}

fn double(w: &Permutation, variant: Variant, limits: &Limits) -> Result<MultiPoly> {
    match variant {
        Variant::Schubert => poly::double_schubert(w, limits),
        Variant::Grothendieck => poly::double_grothendieck(w, limits),
    }
}

/// Memoized single polynomials.
struct Cache<'a> {
    variant: Variant,
    limits: &'a Limits,
    single: BTreeMap<Permutation, MultiPoly>,
}

impl<'a> Cache<'a> {
    fn new(variant: Variant, limits: &'a Limits) -> Self {
        Cache { variant, limits, single: BTreeMap::new() }
    }

    fn get(&mut self, w: &Permutation) -> Result<MultiPoly> {
        if let Some(p) = self.single.get(w) {
            return Ok(p.clone());
        }
        let p = single(w, self.variant, self.limits)?;
        self.single.insert(w.clone(), p.clone());
        Ok(p)
    }
}

fn rank(w: &Permutation) -> usize {
    w.size().max(1)
}

fn pd_count(w: &Permutation, reduced: bool, limits: &Limits) -> Result<usize> {
    Ok(pd_plus(w, reduced, limits)?.count())
}

/// All `(u, v)` with `u⁻¹ * v = w`, searched over `S_{n+1}` for `w ∈ S_n`;
/// with `reduced`, only those with `ℓ(u) + ℓ(v) = ℓ(w)`. Factors outside
/// `S_n` are reported as violations.
fn cauchy_factorizations(w: &Permutation, reduced: bool, report: &mut Report) -> Vec<(Permutation, Permutation)> {
    let n = rank(w);
    let pool = Permutation::all(n + 1);
    let mut out = Vec::new();
    for u in &pool {
        let u_inv = u.inverse();
        for v in &pool {
            if u_inv.demazure(v) != *w || (reduced && u.length() + v.length() != w.length()) {
                continue;
            }
            report.require(u.size() <= n && v.size() <= n, || format!("factor pair ({u}, {v}) escapes S_{n}"));
            out.push((u.clone(), v.clone()));
        }
    }
    out
}

/// The Cauchy identity for `w`, together with a replay of `rect` as a
/// weight-preserving bijection onto the pairs of pipe dreams indexed by the
/// factorizations.
pub fn check_cauchy(w: &Permutation, variant: Variant, limits: &Limits) -> Result<Report> {
    let reduced = variant.reduced();
    let name = if reduced { "cauchy" } else { "kcauchy" };
    let mut report = Report::new(name, format!("w={w}"));
    let factorizations = cauchy_factorizations(w, reduced, &mut report);

    let mut cache = Cache::new(variant, limits);
    let mut rhs = MultiPoly::zero();
    let mut codomain = 0;
    for (u, v) in &factorizations {
        let excess = u.length() + v.length() - w.length();
        rhs += &(beta_pow(excess) * &cache.get(v)? * &cache.get(u)?.swap_xy());
        codomain += pd_count(v, reduced, limits)? * pd_count(u, reduced, limits)?;
    }
    report.compare(&double(w, variant, limits)?, &rhs);

    let mut image = HashSet::new();
    for diagram in spd_plus(w, reduced, limits)? {
        report.cases += 1;
        let r = rect(&diagram)?;
        let (u, v) = r.factors();
        let excess = (u.length() + v.length()).checked_sub(w.length());
        report.require(u.inverse().demazure(&v) == *w && excess.is_some(), || {
            format!("rect({}) = ({v}, {u}) is not a factorization", diagram.to_json())
        });
        report.require(r.v.is_ordinary() && r.u.is_ordinary(), || {
            format!("rect({}) left the ordinary region", diagram.to_json())
        });
        if reduced {
            report.require(r.v.is_reduced() && r.u.is_reduced() && excess == Some(0), || {
                format!("rect({}) is not reduced", diagram.to_json())
            });
        }
        let rebuilt = beta_pow(excess.unwrap_or(0))
            * &MultiPoly::weight(&r.v.clone().into())
            * &MultiPoly::weight(&r.u_dagger());
        report.require(rebuilt == MultiPoly::weight(&diagram), || {
            format!("rect({}) changes the weight", diagram.to_json())
        });
        report.require(rect_inverse(&r.v, &r.u) == diagram, || {
            format!("rect_inverse does not undo rect on {}", diagram.to_json())
        });
        report.require(image.insert((r.v, r.u)), || format!("rect is not injective at {}", diagram.to_json()));
    }
    report.require(image.len() == codomain, || {
        format!("rect hits {} of the {codomain} pairs in the codomain", image.len())
    });
    Ok(report.finish())
}

/// `∇^(β) 𝔊_w = Σ_{w = s_k * v} β^{δ_{w,v}} k 𝔊_v`, or its `β = 0` form.
pub fn check_nabla(w: &Permutation, variant: Variant, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("nabla", format!("w={w} variant={variant}"));
    let n = rank(w);
    let mut cache = Cache::new(variant, limits);
    let mut rhs = MultiPoly::zero();
    for k in 1..=n as u32 {
        for v in Permutation::all(n + 1) {
            if v.simple_demazure(k) != *w {
                continue;
            }
            let same = v == *w;
            if variant.reduced() && same {
                continue;
            }
            report.cases += 1;
            report.require(v.size() <= n, || format!("factor {v} escapes S_{n}"));
            let term = cache.get(&v)?.scale(&BigInt::from(k));
            rhs += &if same { &MultiPoly::beta() * &term } else { term };
        }
    }
    let lhs = match variant {
        Variant::Schubert => cache.get(w)?.nabla().beta_to_zero(),
        Variant::Grothendieck => cache.get(w)?.nabla(),
    };
    report.compare(&lhs, &rhs);
    Ok(report.finish())
}

/// `Σ_{a ∈ R(w)} a_1 ⋯ a_ℓ = ℓ! · 𝔖_w(1, ..., 1)`.
pub fn check_macdonald(w: &Permutation, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("macdonald", format!("w={w}"));
    let words = w.reduced_words(1_000_000)?;
    report.cases = words.len();
    let lhs: BigInt = words.iter().map(|a| a.iter().map(|&x| BigInt::from(x)).product::<BigInt>()).sum();
    let factorial: BigInt = (1..=w.length()).map(BigInt::from).product();
    let rhs = factorial * poly::schubert(w, limits)?.total();
    report.lhs = Some(lhs.to_string());
    report.rhs = Some(rhs.to_string());
    report.require(lhs == rhs, || format!("{lhs} != {rhs}"));
    Ok(report.finish())
}

fn subsets(m: u32) -> impl Iterator<Item = Vec<u32>> {
    (0u32..1 << m).map(move |mask| (1..=m).filter(|r| mask >> (r - 1) & 1 == 1).collect())
}

fn increasing_sequences(len: usize, max: u32) -> Vec<Vec<u32>> {
    subsets(max).filter(|s| s.len() == len).collect()
}

/// The Pieri rule `e_k^(β)(x_1..x_m) 𝔊_w = Σ β^{ℓ(v)-ℓ(w)-k} 𝔊_v` over
/// `w ⊖_m 1 = ∂(a) * v` with `a` increasing of length `m - k`, and the
/// m-insertion bijection behind it.
pub fn check_pieri(w: &Permutation, m: u32, k: u32, variant: Variant, limits: &Limits) -> Result<Report> {
    if k > m {
        return Err(Error::argument(format!("k = {k} exceeds m = {m}")));
    }
    if let Some(d) = w.descents().into_iter().find(|&d| d > m) {
        return Err(Error::argument(format!("{w} has descent {d} > m = {m}")));
    }
    let reduced = variant.reduced();
    let mut report = Report::new("pieri", format!("w={w} m={m} k={k} variant={variant}"));
    let target = w.ominus(m);
    let big = target.size();
    let mut cache = Cache::new(variant, limits);

    // v lies below target in Bruhat order, so S_N suffices.
    let mut rhs = MultiPoly::zero();
    let mut codomain = BTreeSet::new();
    let mut codomain_size = 0;
    for a in increasing_sequences((m - k) as usize, big as u32) {
        let d = Permutation::from_word(&a);
        for v in Permutation::all(big) {
            if d.demazure(&v) != target {
                continue;
            }
            let Some(e) = (v.length() + d.length()).checked_sub(target.length()) else { continue };
            if reduced && e != 0 {
                continue;
            }
            let Some(exponent) = v.length().checked_sub(w.length() + k as usize) else {
                report.fail(format!("negative β exponent for v = {v}"));
                continue;
            };
            rhs += &(beta_pow(exponent) * &cache.get(&v)?);
            codomain_size += pd_count(&v, reduced, limits)?;
            codomain.insert((a.clone(), v));
        }
    }
    let e = if reduced { poly::elementary(k, m) } else { poly::e_k_beta(k, m) };
    report.compare(&(e * &cache.get(w)?), &rhs);

    let mut image = HashSet::new();
    for p in pd_plus(w, reduced, limits)? {
        for rows_i in subsets(m) {
            for rows_j in subsets(m) {
                let proper = rows_j.len() == k as usize && rows_j.iter().all(|r| rows_i.contains(r));
                if !proper || (reduced && rows_i != rows_j) {
                    continue;
                }
                report.cases += 1;
                let r = rect(&insertion_diagram(&p, &rows_i, &rows_j, m)?)?;
                let what = || format!("({rows_i:?},{rows_j:?}) ->{m} {}", p.to_json_cells());
                let a: Vec<u32> = r.u.cells().map(|(_, j)| j as u32).collect();
                let in_row_one = r.u.cells().all(|(i, _)| i == 1) && a.len() == (m - k) as usize;
                report.require(in_row_one && codomain.contains(&(a.clone(), r.v.permutation())), || {
                    format!("{} lands outside the codomain", what())
                });
                report.require(Permutation::from_word(&a) == r.u.permutation().inverse(), || {
                    format!("{}: U is not ∂(a)⁻¹", what())
                });
                let mut expected = p.row_counts();
                for &i in &rows_i {
                    *expected.entry(i as i64).or_insert(0) += 1;
                }
                report.require(r.v.row_counts() == expected, || format!("{} has the wrong weight", what()));
                report.require(r.v.permutation().descents().iter().all(|&d| d <= m), || {
                    format!("{} has a descent beyond m", what())
                });
                if reduced {
                    report.require(r.v.is_reduced(), || format!("{} is not reduced", what()));
                }
                report.require(image.insert((r.v, r.u)), || format!("{} collides", what()));
            }
        }
    }
    report.require(image.len() == codomain_size, || {
        format!("insertion hits {} of {codomain_size} pipe dreams", image.len())
    });
    Ok(report.finish())
}

trait CellsJson {
    fn to_json_cells(&self) -> String;
}

impl CellsJson for PipeDream {
    fn to_json_cells(&self) -> String {
        serde_json::to_string(&self.cells().collect::<Vec<Cell>>()).expect("cells serialize")
    }
}

/// A letter `k` paired with a pipe dream.
type Labelled = (u32, PipeDream);

fn p_k(k: u32) -> PipeDream {
    PipeDream::new([(1, k as i64)]).expect("(1, k) lies in H")
}

/// Stable pipe dreams in rows `1..=rows` for every `(k, v)` with
/// `w = v * s_k` (`right`) or `w = s_k * v`.
fn stanley_side(
    w: &Permutation,
    rows: i64,
    right: bool,
    reduced: bool,
    limits: &Limits,
) -> Result<BTreeSet<Labelled>> {
    let n = rank(w);
    let mut out = BTreeSet::new();
    for k in 1..=n as u32 {
        for v in Permutation::all(n) {
            let product = if right { v.demazure_simple(k) } else { v.simple_demazure(k) };
            if product != *w || (reduced && v.length() + 1 != w.length()) {
                continue;
            }
            for q in enumerate::stable(&v, rows, reduced, limits)? {
                out.insert((k, q));
            }
        }
    }
    Ok(out)
}

/// `Σ_{w=s_k*v} β^{δ} G_v = Σ_{w=u*s_k} β^{δ} G_u` truncated to `rows`
/// variables, and the pairing of the two index sets through `corect⁻¹`
/// followed by `rect`. The pairing is accepted in either orientation.
pub fn check_stanley(w: &Permutation, rows: i64, variant: Variant, limits: &Limits) -> Result<Report> {
    let reduced = variant.reduced();
    let mut report = Report::new("stanley", format!("w={w} N={rows} variant={variant}"));
    let n = rank(w);
    let mut lhs = MultiPoly::zero();
    let mut rhs = MultiPoly::zero();
    for k in 1..=n as u32 {
        for v in Permutation::all(n + 1) {
            for (right, side) in [(false, &mut lhs), (true, &mut rhs)] {
                let product = if right { v.demazure_simple(k) } else { v.simple_demazure(k) };
                if product != *w {
                    continue;
                }
                let same = v == *w;
                if reduced && (same || v.length() + 1 != w.length()) {
                    continue;
                }
                report.require(v.size() <= n, || format!("factor {v} escapes S_{n}"));
                let g = poly::stable_truncation(&v, rows, reduced, limits)?;
                *side += &if same { &MultiPoly::beta() * &g } else { g };
            }
        }
    }
    report.compare(&lhs, &rhs);

    let right_side = stanley_side(w, rows, true, reduced, limits)?;
    let left_side = stanley_side(w, rows, false, reduced, limits)?;
    report.cases = right_side.len();
    let forward = |(k, q): &Labelled| -> Result<Labelled> {
        let r = rect(&corect_inverse(q, &p_k(*k)))?;
        Ok((pairing_letter(&r.u), r.v))
    };
    let backward = |(k, q): &Labelled| -> Result<Labelled> {
        let r = corect(&rect_inverse(q, &p_k(*k)))?;
        Ok((pairing_letter(&r.u), r.v))
    };
    let mut problems = Vec::new();
    for (label, domain, codomain, map) in [
        ("corect⁻¹ then rect", &right_side, &left_side, &forward as &dyn Fn(&_) -> Result<_>),
        ("rect⁻¹ then corect", &left_side, &right_side, &backward),
    ] {
        match pairing_problem(domain, codomain, map)? {
            None => {
                report.notes.push(format!("pairing: {label}"));
                problems.clear();
                break;
            }
            Some(p) => problems.push(format!("{label}: {p}")),
        }
    }
    for p in problems {
        report.fail(p);
    }
    Ok(report.finish())
}

/// `k` when `u = P_k`, else 0.
fn pairing_letter(u: &PipeDream) -> u32 {
    match u.cells().collect::<Vec<_>>()[..] {
        [(1, k)] if k >= 1 => k as u32,
        _ => 0,
    }
}

/// Why `map` fails to be a weight-preserving bijection `domain → codomain`.
fn pairing_problem(
    domain: &BTreeSet<Labelled>,
    codomain: &BTreeSet<Labelled>,
    map: &dyn Fn(&Labelled) -> Result<Labelled>,
) -> Result<Option<String>> {
    if domain.len() != codomain.len() {
        return Ok(Some(format!("{} elements on one side, {} on the other", domain.len(), codomain.len())));
    }
    let mut image = BTreeSet::new();
    for x in domain {
        let y = map(x)?;
        let ok = y.0 != 0 && codomain.contains(&y) && y.1.row_counts() == x.1.row_counts() && y.1.len() == x.1.len();
        if !ok {
            return Ok(Some(format!("(k={}, {}) maps to (k={}, {})", x.0, x.1.to_json_cells(), y.0, y.1.to_json_cells())));
        }
        image.insert(y);
    }
    if image.len() != domain.len() {
        return Ok(Some("the map is not injective".into()));
    }
    Ok(None)
}

/// No black checker in row `k`.
fn black_free_row(q: &SuperPipeDream, k: i64) -> bool {
    q.black.cells().all(|(i, _)| i != k)
}

/// The recurrence `𝔊_w(x;y) = R_1 𝔊_w + Σ_{w = u*s_k} β^{δ} x_k R_k 𝔊_u`,
/// replaying the bijection that sorts each diagram by the largest `k` for
/// which `X⁺_{≥k}` leaves the ordinary region.
pub fn check_rk_recurrence(w: &Permutation, variant: Variant, limits: &Limits) -> Result<Report> {
    let reduced = variant.reduced();
    let mut report = Report::new("rk", format!("w={w} variant={variant}"));
    let n = rank(w);
    let mut factors = Vec::new();
    for k in 1..=n as u32 {
        for u in Permutation::all(n + 1) {
            if u.demazure_simple(k) != *w || (reduced && u.length() + 1 != w.length()) {
                continue;
            }
            report.require(u.size() <= n, || format!("factor {u} escapes S_{n}"));
            factors.push((k, u));
        }
    }
    let lhs = double(w, variant, limits)?;
    let mut rhs = lhs.r_k(1);
    let mut codomain = spd_plus(w, reduced, limits)?.filter(|q| black_free_row(q, 1)).count();
    for (k, u) in &factors {
        let term = &MultiPoly::x(*k as i64) * &double(u, variant, limits)?.r_k(*k as i64);
        rhs += &if u == w { &MultiPoly::beta() * &term } else { term };
        codomain += spd_plus(u, reduced, limits)?.filter(|q| black_free_row(q, *k as i64)).count();
    }
    report.compare(&lhs, &rhs);

    let mut image = HashSet::new();
    for p in spd_plus(w, reduced, limits)? {
        report.cases += 1;
        let what = p.to_json();
        let moved = x_plus(&p);
        let (k, q) = if moved.is_ordinary() {
            report.require(black_free_row(&moved, 1) && moved.permutation() == *w, || format!("X+ misbehaves on {what}"));
            report.require(MultiPoly::weight(&moved).r_k(1) == MultiPoly::weight(&p), || {
                format!("R_1 does not recover the weight of {what}")
            });
            (0, moved)
        } else {
            let top = p.black.max_row().unwrap_or(0);
            let Some((k, flowed)) = (1..=top)
                .rev()
                .map(|k| Ok((k, x_plus_from(&p, k)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|(_, f)| !f.is_ordinary())
            else {
                report.fail(format!("no row of {what} leaves the ordinary region"));
                continue;
            };
            let mut q = flowed.clone();
            q.black = PipeDream::new(flowed.black.cells().filter(|&c| c != (k + 1, 0)))?;
            let u = q.permutation();
            let ok = flowed.black.contains((k + 1, 0))
                && q.is_ordinary()
                && black_free_row(&q, k)
                && u.demazure_simple(k as u32) == *w
                && (!reduced || q.is_reduced());
            report.require(ok, || format!("{what} does not split off a checker at row {k}"));
            let mut weight = &MultiPoly::x(k) * &MultiPoly::weight(&q).r_k(k);
            if u == *w {
                weight = &MultiPoly::beta() * &weight;
            }
            report.require(weight == MultiPoly::weight(&p), || format!("weight mismatch at {what}"));
            (k, q)
        };
        report.require(image.insert((k, q)), || format!("collision at {what}"));
    }
    report.require(image.len() == codomain, || format!("image has {} of {codomain} elements", image.len()));
    Ok(report.finish())
}

fn random_diagram(rng: &mut ChaCha8Rng) -> SuperPipeDream {
    let pick = |rng: &mut ChaCha8Rng| -> Vec<Cell> {
        let size = rng.gen_range(0..=12);
        (0..size)
            .map(|_| loop {
                let c = (rng.gen_range(-3..=8), rng.gen_range(-3..=8));
                if in_half_plane(c) {
                    break c;
                }
            })
            .collect()
    };
    let black = pick(rng);
    let red = pick(rng);
    SuperPipeDream::from_cells(black, red).expect("sampled cells lie in H")
}

/// `σ(Y⁺ P) = X⁺ P` over every `SPD⁺(w)`, `w ∈ S_n`, and `samples` seeded
/// random diagrams with coordinates in `[-3, 8]`.
pub fn check_flow_symmetry(max_n: usize, samples: usize, seed: u64, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("symmetry", format!("n={max_n} samples={samples} seed={seed}"));
    let check = |report: &mut Report, p: &SuperPipeDream| {
        report.cases += 1;
        let y = y_plus(p);
        let ok = y.shift(1) == x_plus(p) && y.permutation() == p.permutation();
        report.require(ok, || format!("σY+ != X+ on {}", p.to_json()));
    };
    for w in Permutation::all(max_n) {
        for p in spd_plus(&w, false, limits)? {
            check(&mut report, &p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_diagram(&mut rng);
        check(&mut report, &p);
    }
    Ok(report.finish())
}

/// Ordinariness, reducedness, symmetry and inversion properties of `rect`
/// and `corect` on `SPD⁺(w)` and on its images under `σ^{±1}`.
pub fn check_rect_props(w: &Permutation, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("rect", format!("w={w}"));
    for base in spd_plus(w, false, limits)? {
        for p in [base.shift(-1), base.clone(), base.shift(1)] {
            report.cases += 1;
            let what = p.to_json();
            let r = rect(&p)?;
            let c = corect(&p)?;
            let (u, v) = r.factors();
            let ut = c.u.transpose().permutation();
            let len = p.permutation().length();
            report.require(u.inverse().demazure(&v) == p.permutation(), || format!("rect contract fails on {what}"));
            report.require(c.v.permutation().demazure(&ut) == p.permutation(), || {
                format!("corect contract fails on {what}")
            });
            report.require(p.is_ordinary() == (r.v.is_ordinary() && r.u.is_ordinary()), || {
                format!("rect changes ordinariness of {what}")
            });
            let rect_reduced = r.v.is_reduced() && r.u.is_reduced() && u.length() + v.length() == len;
            let corect_reduced = c.v.is_reduced() && c.u.is_reduced() && c.v.permutation().length() + ut.length() == len;
            report.require(p.is_reduced() == rect_reduced && p.is_reduced() == corect_reduced, || {
                format!("reducedness not preserved on {what}")
            });
            let rs = rect(&p.adjoint())?;
            let cs = corect(&p.adjoint())?;
            report.require((rs.v, rs.u) == (r.u.clone(), r.v.clone()), || format!("rect symmetry fails on {what}"));
            report.require((cs.v, cs.u) == (c.u.clone(), c.v.clone()), || format!("corect symmetry fails on {what}"));
            report.require(rect_inverse(&r.v, &r.u) == p && corect_inverse(&c.v, &c.u) == p, || {
                format!("inverse fails on {what}")
            });
        }
    }
    Ok(report.finish())
}

/// `tab` as a weight-preserving bijection `PD₀⁺(Grass(λ, m)) → RSSYT(λ, m)`,
/// and `𝔖_{Grass(λ,m)}` as the tableau generating function.
pub fn check_tab(shape: &Partition, m: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("tab", format!("shape={shape} m={m}"));
    let w = Permutation::grass(shape, m)?;
    let tableaux: BTreeSet<RevTableau> = rssyt(shape, m as i64).into_iter().collect();
    let mut image = BTreeSet::new();
    for p in pd_plus(&w, true, limits)? {
        report.cases += 1;
        let t = tab(&p, m)?;
        let what = || format!("tab({}) = {t}", p.to_json_cells());
        report.require(tableaux.contains(&t), || format!("{} is not in RSSYT", what()));
        report.require(t.weight() == MultiPoly::weight(&p.clone().into()), || format!("{} changes weight", what()));
        report.require(tab_inverse(&t, m)? == p, || format!("{} does not invert", what()));
        image.insert(t);
    }
    report.require(image == tableaux, || format!("tab hits {} of {} tableaux", image.len(), tableaux.len()));
    let schur: MultiPoly = tableaux.iter().map(RevTableau::weight).sum();
    report.compare(&poly::schubert(&w, limits)?, &schur);
    Ok(report.finish())
}

/// `tab(I →ᵐ P) = I * tab(P)` for every reduced `P` of `Grass(λ, m)` and `I ⊆ [m]`.
pub fn check_insertion(shape: &Partition, m: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("insertion", format!("shape={shape} m={m}"));
    let w = Permutation::grass(shape, m)?;
    for p in pd_plus(&w, true, limits)? {
        let before = tab(&p, m)?;
        for rows in subsets(m) {
            report.cases += 1;
            let column = RevTableau::column(&rows.iter().map(|&r| r as i64).collect::<Vec<_>>());
            let expected = plactic_product(&column, &before);
            let got = tab(&insert(&p, &rows, &rows, m)?, m)?;
            report.require(got == expected, || format!("{rows:?} ->{m} {before}: got {got}, expected {expected}"));
        }
    }
    Ok(report.finish())
}

fn matrix_text(a: &[Vec<u8>]) -> String {
    a.iter().map(|r| r.iter().map(|b| b.to_string()).collect::<String>()).collect::<Vec<_>>().join(";")
}

/// `RSK′(A) = (ins(A), ins(A†))` for every `m × n` binary matrix, with the
/// shapes confined to the box and complementary.
pub fn check_rsk(m: usize, n: usize, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("rsk", format!("{m}x{n}"));
    let matrices: Vec<_> = binary_matrices(m, n, limits)?.collect();
    let outcomes: Vec<Option<String>> = matrices
        .par_iter()
        .map(|a| -> Result<Option<String>> {
            let (first, second) = rsk_prime(a)?;
            let shape = first.shape();
            let ok = first == ins(a)
                && second == ins(&a_dagger(a))
                && shape.fits_in_box(m as u32, n as u32)
                && second.shape() == shape.dagger(m as u32, n as u32)?;
            Ok((!ok).then(|| format!("A={}: RSK' = ({first}, {second})", matrix_text(a))))
        })
        .collect::<Result<_>>()?;
    report.cases = outcomes.len();
    for o in outcomes.into_iter().flatten() {
        report.fail(o);
    }
    Ok(report.finish())
}

/// Counts the `m × n` matrices with `overline(rec(A)) ≠ ins(A†)`. A nonzero
/// count is a finding, not a failure.
pub fn conjecture_scan(m: usize, n: usize, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("conjecture", format!("{m}x{n}"));
    let matrices: Vec<_> = binary_matrices(m, n, limits)?.collect();
    let outcomes: Vec<Option<String>> = matrices
        .par_iter()
        .map(|a| -> Result<Option<String>> {
            let lhs = overline(&rec(a), m, n as i64)?;
            let rhs = ins(&a_dagger(a));
            Ok((lhs != rhs).then(|| format!("A={}: overline(rec(A)) = {lhs}, ins(A†) = {rhs}", matrix_text(a))))
        })
        .collect::<Result<_>>()?;
    report.cases = outcomes.len();
    for o in outcomes.into_iter().flatten() {
        report.fail(o);
    }
    if report.violations > 0 {
        report.status = Status::Finding;
    }
    Ok(report)
}

/// Pipe-dream generators against independent computations: divided
/// differences, `β ↦ 0`, `y ↦ 0`, and the `x ↔ y` symmetry.
pub fn check_oracle(w: &Permutation, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("oracle", format!("w={w}"));
    let s = poly::schubert(w, limits)?;
    let g = poly::grothendieck(w, limits)?;
    let gxy = poly::double_grothendieck(w, limits)?;
    let sxy = poly::double_schubert(w, limits)?;
    let checks = [
        ("divided differences", s == divided_difference_schubert(w)),
        ("G at β = 0", g.beta_to_zero() == s),
        ("G(x;y) at y = 0", gxy.y_to_zero() == g),
        ("G(x;y) at β = 0", gxy.beta_to_zero() == sxy),
        ("x/y swap", poly::double_grothendieck(&w.inverse(), limits)? == gxy.swap_xy()),
    ];
    for (label, ok) in checks {
        report.cases += 1;
        report.require(ok, || format!("{label} disagrees"));
    }
    report.lhs = Some(s.to_string());
    Ok(report.finish())
}

/// Identities runnable through [`run_identity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Cauchy,
    KCauchy,
    Nabla,
    Macdonald,
    Pieri,
    Stanley,
    Rk,
    Symmetry,
    Rect,
    Tab,
    Insertion,
    Rsk,
    Conjecture,
    Oracle,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::Cauchy,
        Identity::KCauchy,
        Identity::Nabla,
        Identity::Macdonald,
        Identity::Pieri,
        Identity::Stanley,
        Identity::Rk,
        Identity::Symmetry,
        Identity::Rect,
        Identity::Tab,
        Identity::Insertion,
        Identity::Rsk,
        Identity::Conjecture,
        Identity::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Cauchy => "cauchy",
            Identity::KCauchy => "kcauchy",
            Identity::Nabla => "nabla",
            Identity::Macdonald => "macdonald",
            Identity::Pieri => "pieri",
            Identity::Stanley => "stanley",
            Identity::Rk => "rk",
            Identity::Symmetry => "symmetry",
            Identity::Rect => "rect",
            Identity::Tab => "tab",
            Identity::Insertion => "insertion",
            Identity::Rsk => "rsk",
            Identity::Conjecture => "conjecture",
            Identity::Oracle => "oracle",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::argument(format!("unknown identity {s:?}")))
    }
}

/// Parameters shared by [`run_identity`].
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    /// Permutations range over `S_max_n`.
    pub max_n: usize,
    pub seed: u64,
    pub samples: usize,
    pub limits: Limits,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_n: 4, seed: 0, samples: 10_000, limits: Limits::default() }
    }
}

fn per_perm<F>(config: &RunConfig, f: F) -> Result<Vec<Report>>
where
    F: Fn(&Permutation) -> Result<Report> + Sync + Send,
{
    Permutation::all(config.max_n).par_iter().map(f).collect()
}

fn both_variants<F>(config: &RunConfig, f: F) -> Result<Vec<Report>>
where
    F: Fn(&Permutation, Variant) -> Result<Report> + Sync + Send,
{
    let mut out = per_perm(config, |w| f(w, Variant::Schubert))?;
    out.extend(per_perm(config, |w| f(w, Variant::Grothendieck))?);
    Ok(out)
}

/// Runs one identity over its standard parameter range. Parallel work uses
/// the ambient rayon pool; output order is deterministic.
pub fn run_identity(identity: Identity, config: &RunConfig) -> Result<Vec<Report>> {
    let limits = &config.limits;
    match identity {
        Identity::Cauchy => per_perm(config, |w| check_cauchy(w, Variant::Schubert, limits)),
        Identity::KCauchy => per_perm(config, |w| check_cauchy(w, Variant::Grothendieck, limits)),
        Identity::Nabla => both_variants(config, |w, v| check_nabla(w, v, limits)),
        Identity::Macdonald => {
            let mut out = per_perm(config, |w| check_macdonald(w, limits))?;
            let n = config.max_n as u32 + 1;
            let longest = Permutation::from_one_line(&(1..=n).rev().collect::<Vec<_>>())?;
            out.push(check_macdonald(&longest, limits)?);
            Ok(out)
        }
        Identity::Pieri => {
            let cases: Vec<(Permutation, u32, Variant)> = Partition::in_box(2, 3)
                .into_iter()
                .map(|shape| Permutation::grass(&shape, 2))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flat_map(|w| {
                    [Variant::Schubert, Variant::Grothendieck]
                        .into_iter()
                        .flat_map(move |v| {
                            let w = w.clone();
                            (0..=2).map(move |k| (w.clone(), k, v))
                        })
                })
                .collect();
            cases.par_iter().map(|(w, k, v)| check_pieri(w, 2, *k, *v, limits)).collect()
        }
        Identity::Stanley => {
            let rows = config.max_n as i64;
            both_variants(config, |w, v| check_stanley(w, rows, v, limits))
        }
        Identity::Rk => both_variants(config, |w, v| check_rk_recurrence(w, v, limits)),
        Identity::Symmetry => Ok(vec![check_flow_symmetry(config.max_n, config.samples, config.seed, limits)?]),
        Identity::Rect => per_perm(config, |w| check_rect_props(w, limits)),
        Identity::Tab => Partition::in_box(3, 3).par_iter().map(|s| check_tab(s, 3, limits)).collect(),
        Identity::Insertion => Partition::in_box(3, 3).par_iter().map(|s| check_insertion(s, 3, limits)).collect(),
        Identity::Rsk => Ok(vec![check_rsk(3, 3, limits)?, check_rsk(3, 4, limits)?]),
        Identity::Conjecture => Ok(vec![conjecture_scan(3, 3, limits)?, conjecture_scan(3, 4, limits)?]),
        Identity::Oracle => per_perm(config, |w| check_oracle(w, limits)),
    }
}
