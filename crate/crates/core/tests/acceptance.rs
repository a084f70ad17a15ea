//! Acceptance suite. Each test checks one criterion and writes a single
//! `criterion NN PASS|FAIL` line to stderr. Everything is exact: polynomial
//! coefficients are big integers and diagrams are compared cell by cell.

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use serde_json::Value;

use pdlab::diagram::in_half_plane;
use pdlab::flow::{x_plus, x_plus_from, x_plus_from_chain, y_plus, y_plus_from_chain};
use pdlab::rectify::{corect, corect_inverse, insert, insertion_diagram, rect};
use pdlab::suite::{run_identity, Identity, Report, RunConfig, Status};
use pdlab::tableau::{
    a_dagger, ins, matrix_diagram, parse_matrix, plactic_product, rsk_prime, tab, tab_coloured,
    yprime_tableau_step, ColouredEntry, RevTableau,
};
use pdlab::{Partition, Permutation, PipeDream, SuperPipeDream};

/// Runs `body`, reports the outcome on stderr and re-raises any failure.
fn criterion(number: u32, title: &str, body: impl FnOnce() -> String) {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(body));
    let secs = start.elapsed().as_secs_f64();
    let line = match &outcome {
        Ok(detail) => format!("criterion {number:02} PASS {title}: {detail} ({secs:.1}s)\n"),
        Err(_) => format!("criterion {number:02} FAIL {title} ({secs:.1}s)\n"),
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
    if let Err(e) = outcome {
        panic::resume_unwind(e);
    }
}

fn fixture(text: &str) -> Value {
    serde_json::from_str(text).expect("fixture is valid JSON")
}

fn range(v: &Value) -> (i64, i64) {
    (v[0].as_i64().unwrap(), v[1].as_i64().unwrap())
}

fn window(v: &Value) -> ((i64, i64), (i64, i64)) {
    (range(&v["rows"]), range(&v["cols"]))
}

/// Decodes a transcribed grid: 0 empty, 1 black, 2 red, 3 both, 8 or 9 a
/// cell outside the half plane.
fn decode(v: &Value) -> SuperPipeDream {
    let ((r0, r1), (c0, c1)) = window(v);
    let lines = v["grid"].as_array().unwrap();
    assert_eq!(lines.len() as i64, r1 - r0 + 1, "row count of {v}");
    let mut black = Vec::new();
    let mut red = Vec::new();
    for (di, line) in lines.iter().enumerate() {
        let tokens: Vec<&str> = line.as_str().unwrap().split_whitespace().collect();
        assert_eq!(tokens.len() as i64, c1 - c0 + 1, "column count of {line}");
        for (dj, token) in tokens.into_iter().enumerate() {
            let cell = (r0 + di as i64, c0 + dj as i64);
            let outside = matches!(token, "8" | "9");
            assert_eq!(in_half_plane(cell), !outside, "code {token} at {cell:?}");
            if matches!(token, "1" | "3") {
                black.push(cell);
            }
            if matches!(token, "2" | "3") {
                red.push(cell);
            }
        }
    }
    SuperPipeDream::from_cells(black, red).unwrap()
}

fn black(p: &PipeDream) -> SuperPipeDream {
    SuperPipeDream::new(p.clone(), PipeDream::empty())
}

fn red(p: &PipeDream) -> SuperPipeDream {
    SuperPipeDream::new(PipeDream::empty(), p.clone())
}

/// Byte-exact comparison of the rendered window, then full equality so that
/// nothing outside the window slips through.
fn assert_grid(label: &str, got: &SuperPipeDream, expected: &Value) {
    let (rows, cols) = window(expected);
    let want = decode(expected);
    assert_eq!(got.render_text_in(rows, cols), want.render_text_in(rows, cols), "{label}");
    assert_eq!(got, &want, "{label}");
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn coloured_text(t: &[Vec<ColouredEntry>]) -> String {
    t.iter()
        .map(|row| {
            let cells: Vec<String> =
                row.iter().map(|e| format!("{}{}", e.label, if e.red { "*" } else { "" })).collect();
            cells.join(" ") + "\n"
        })
        .collect()
}

fn run(ids: &[Identity], config: &RunConfig) -> Vec<Report> {
    ids.iter().flat_map(|&id| run_identity(id, config).unwrap()).collect()
}

fn require_all_pass(reports: &[Report]) -> (usize, usize) {
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    assert!(failed.is_empty(), "failing reports:\n{}", failed.join("\n"));
    (reports.len(), reports.iter().map(|r| r.cases).sum())
}

fn s4() -> RunConfig {
    RunConfig { max_n: 4, ..RunConfig::default() }
}

#[test]
fn criterion_01_cauchy() {
    criterion(1, "Cauchy identities over S4", || {
        let reports = run(&[Identity::Cauchy, Identity::KCauchy], &s4());
        assert_eq!(reports.len(), 48);
        assert!(reports.iter().all(|r| r.lhs.is_some() && r.lhs == r.rhs));
        let (n, cases) = require_all_pass(&reports);
        format!("{n} permutation checks, {cases} diagrams replayed through rect")
    });
}

#[test]
fn criterion_02_flow_symmetry() {
    criterion(2, "flow symmetry", || {
        let config = RunConfig { samples: 10_000, seed: 2024, ..s4() };
        let reports = run(&[Identity::Symmetry], &config);
        let (_, cases) = require_all_pass(&reports);
        assert!(cases > 10_000);

        let f = fixture(include_str!("fixtures/flow_chain.json"));
        let p = decode(&f["column_chain"][0]);
        assert_eq!(p.permutation(), perm(f["permutation"].as_str().unwrap()));
        let columns = y_plus_from_chain(&p, 1).unwrap();
        let rows = x_plus_from_chain(&p, 1).unwrap();
        for (k, (got, want)) in columns.iter().zip(f["column_chain"].as_array().unwrap()).enumerate() {
            assert_grid(&format!("column flow step {k}"), got, want);
        }
        for (k, (got, want)) in rows.iter().zip(f["row_chain"].as_array().unwrap()).enumerate() {
            assert_grid(&format!("row flow step {k}"), got, want);
        }
        assert_eq!((columns.len(), rows.len()), (6, 6));
        assert_eq!(y_plus(&p).shift(1), x_plus(&p));
        format!("{cases} diagrams, 0 violations, worked flow chains match")
    });
}

fn word_fixture() {
    let f = fixture(include_str!("fixtures/pipe_dream_word.json"));
    let p = decode(&f["diagram"]).black;
    let word: Vec<String> = p.word().iter().map(u32::to_string).collect();
    assert_eq!(word.join(","), f["word"].as_str().unwrap());
    assert_eq!(p.permutation().to_string(), f["permutation"].as_str().unwrap());
    assert_eq!(p.is_reduced(), f["reduced"].as_bool().unwrap());
}

fn rectification_fixture() {
    let f = fixture(include_str!("fixtures/rectification.json"));
    let w = decode(&f["input"]);
    let r = rect(&w).unwrap();
    assert_eq!(r.steps as u64, f["steps"].as_u64().unwrap());
    let flowed = (0..r.steps).fold(w.clone(), |acc, _| y_plus(&acc));
    assert_grid("flowed diagram", &flowed, &f["flowed"]);
    assert_grid("V", &black(&r.v), &f["v"]);
    assert_grid("U dagger", &r.u_dagger(), &f["u_dagger"]);
    let (u, v) = r.factors();
    assert_eq!(r.u_dagger().permutation().to_string(), f["u_dagger_permutation"].as_str().unwrap());
    assert_eq!(u, r.u_dagger().permutation().inverse());
    assert_eq!(v.to_string(), f["v_permutation"].as_str().unwrap());
    assert_eq!(w.permutation().to_string(), f["w"].as_str().unwrap());
    assert_eq!(u.inverse().demazure(&v), w.permutation());
}

fn corectification_fixture() {
    let f = fixture(include_str!("fixtures/corectification.json"));
    let w = decode(&f["input"]);
    assert!(w.is_ordinary());
    let r = corect(&w).unwrap();
    assert_eq!(r.steps, 1);
    assert_grid("one step of corect", &pdlab::flow::y_minus(&w), &f["after_one_step"]);
    assert_grid("V", &black(&r.v), &f["v"]);
    assert_grid("U dagger", &r.u_dagger(), &f["u_dagger"]);
    assert_eq!(r.v.is_ordinary(), f["v_ordinary"].as_bool().unwrap());
    assert_eq!(corect_inverse(&r.v, &r.u), w);
}

fn grassmannian_fixture() {
    let f = fixture(include_str!("fixtures/grassmannian_tableau.json"));
    let p = decode(&f["diagram"]).black;
    let m = f["m"].as_u64().unwrap() as u32;
    assert_eq!(p.permutation().to_string(), f["permutation"].as_str().unwrap());
    let t = tab(&p, m).unwrap();
    assert_eq!(t.render_text(), f["tableau"].as_str().unwrap());
    let shape: Vec<u64> = f["shape"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(t.shape().parts().iter().map(|&x| x as u64).collect::<Vec<_>>(), shape);
}

fn insertion_fixture() {
    let base = fixture(include_str!("fixtures/grassmannian_tableau.json"));
    let f = fixture(include_str!("fixtures/insertion.json"));
    let p = decode(&base["diagram"]).black;
    let m = f["m"].as_u64().unwrap() as u32;
    let rows: Vec<u32> = f["rows"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect();
    let w = insertion_diagram(&p, &rows, &rows, m).unwrap();
    assert_grid("insertion diagram", &w, &f["diagram"]);

    let cells = |v: &Value| -> Vec<(i64, i64)> {
        v.as_array().unwrap().iter().map(|c| (c[0].as_i64().unwrap(), c[1].as_i64().unwrap())).collect()
    };
    let states: Vec<SuperPipeDream> = f["states"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| SuperPipeDream::from_cells(cells(&s["black"]), cells(&s["red"])).unwrap())
        .collect();
    let after = |d: &SuperPipeDream, k: usize| (0..k).fold(d.clone(), |acc, _| y_plus(&acc));
    assert_eq!(after(&states[0], 4), w);
    assert_eq!(after(&w, 5), states[3]);

    let mut cur = states[0].clone();
    for (k, state) in f["states"].as_array().unwrap().iter().enumerate() {
        assert_eq!(cur, states[k], "route state {k}");
        assert_eq!(coloured_text(&tab_coloured(&cur, m).unwrap()), state["tableau"].as_str().unwrap());
        if k + 1 < states.len() {
            for j in -3..=5 {
                yprime_tableau_step(&cur, j, m).unwrap();
                cur = pdlab::flow::y_prime_col(&cur, j).unwrap();
            }
        }
    }

    let out = insert(&p, &rows, &rows, m).unwrap();
    assert_eq!(out, states[3].black);
    let t = tab(&out, m).unwrap();
    assert_eq!(t.render_text(), f["tableau"].as_str().unwrap());
    let column = RevTableau::column(&rows.iter().map(|&r| r as i64).collect::<Vec<_>>());
    assert_eq!(plactic_product(&column, &tab(&p, m).unwrap()), t);
}

fn dual_rsk_fixture() {
    let f = fixture(include_str!("fixtures/dual_rsk.json"));
    let a = parse_matrix(f["matrix"].as_str().unwrap()).unwrap();
    let w = matrix_diagram(&a);
    assert_grid("matrix diagram", &w, &f["diagram"]);
    let r = rect(&w).unwrap();
    assert_grid("V", &black(&r.v), &f["v"]);
    assert_grid("U", &red(&r.u), &f["u"]);
    let first = f["insertion_tableau"].as_str().unwrap();
    let second = f["dual_tableau"].as_str().unwrap();
    assert_eq!(ins(&a).render_text(), first);
    assert_eq!(ins(&a_dagger(&a)).render_text(), second);
    let (p, q) = rsk_prime(&a).unwrap();
    assert_eq!((p.render_text().as_str(), q.render_text().as_str()), (first, second));
}

#[test]
fn criterion_03_worked_examples() {
    criterion(3, "worked examples", || {
        let checks: [(&str, fn()); 6] = [
            ("word", word_fixture),
            ("rect", rectification_fixture),
            ("corect", corectification_fixture),
            ("tab", grassmannian_fixture),
            ("insertion", insertion_fixture),
            ("dual RSK", dual_rsk_fixture),
        ];
        for (_, check) in &checks {
            check();
        }
        let names: Vec<&str> = checks.iter().map(|(n, _)| *n).collect();
        format!("{} fixtures match: {}", checks.len(), names.join(", "))
    });
}

#[test]
fn criterion_04_macdonald() {
    criterion(4, "Macdonald reduced-word identity", || {
        let reports = run(&[Identity::Macdonald], &s4());
        let (n, _) = require_all_pass(&reports);
        let longest = reports.last().unwrap();
        assert_eq!(longest.params, "w=54321");
        assert_eq!(longest.cases, 768);
        assert_eq!(longest.lhs, longest.rhs);
        format!("{} permutations of S4 and w0 of S5 (768 reduced words, total {})", n - 1, longest.lhs.as_ref().unwrap())
    });
}

#[test]
fn criterion_05_pieri() {
    criterion(5, "beta-Pieri rule", || {
        let reports = run(&[Identity::Pieri], &s4());
        assert_eq!(reports.len(), Partition::in_box(2, 3).len() * 3 * 2);
        let (n, cases) = require_all_pass(&reports);

        let f = fixture(include_str!("fixtures/pieri_diagram.json"));
        let p = decode(&f["diagram"]).black;
        let list = |v: &Value| -> Vec<u32> { v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect() };
        let m = f["m"].as_u64().unwrap() as u32;
        let w = insertion_diagram(&p, &list(&f["rows_i"]), &list(&f["rows_j"]), m).unwrap();
        assert_grid("Pieri diagram", &w, &f["super_diagram"]);
        let shifted = perm(f["shifted_permutation"].as_str().unwrap());
        assert_eq!(p.permutation(), perm(f["permutation"].as_str().unwrap()));
        assert_eq!(p.permutation().ominus(m), shifted);
        assert_eq!(w.permutation(), shifted);
        format!("{n} cases (shape, k, variant), {cases} insertions replayed, worked diagram matches")
    });
}

#[test]
fn criterion_06_stanley() {
    criterion(6, "Stanley identity in 4 variables", || {
        let reports = run(&[Identity::Stanley], &s4());
        assert_eq!(reports.len(), 48);
        let (n, cases) = require_all_pass(&reports);

        let f = fixture(include_str!("fixtures/stanley_pairing.json"));
        let v = decode(&f["v"]).black;
        let k = f["v_letter"].as_i64().unwrap();
        let w = corect_inverse(&v, &PipeDream::new([(1, k)]).unwrap());
        assert_grid("paired diagram", &w, &f["diagram"]);
        assert_eq!(w.permutation(), perm(f["w"].as_str().unwrap()));
        let r = rect(&w).unwrap();
        assert_grid("U", &black(&r.v), &f["u"]);
        assert_eq!(r.u, PipeDream::new([(1, f["u_letter"].as_i64().unwrap())]).unwrap());
        format!("{n} checks, {cases} pairings, worked pairing matches")
    });
}

#[test]
fn criterion_07_rk_recurrence() {
    criterion(7, "R_k recurrence", || {
        let reports = run(&[Identity::Rk], &s4());
        assert_eq!(reports.len(), 48);
        let (n, cases) = require_all_pass(&reports);

        let f = fixture(include_str!("fixtures/rk_split.json"));
        let w = perm(f["w"].as_str().unwrap());
        let p = decode(&f["ordinary"]["input"]);
        assert_eq!(p.permutation(), w);
        assert_grid("X+ image", &x_plus(&p), &f["ordinary"]["image"]);

        let split = &f["split"];
        let p = decode(&split["input"]);
        let k = split["k"].as_i64().unwrap();
        assert_eq!(p.permutation(), w);
        let flowed = x_plus_from(&p, k).unwrap();
        assert_grid("X+ from row k", &flowed, &split["flowed"]);
        let dropped = (k + 1, 0);
        assert!(flowed.black.contains(dropped));
        let kept = SuperPipeDream::from_cells(
            flowed.black.cells().filter(|&c| c != dropped),
            flowed.red.cells(),
        )
        .unwrap();
        assert_grid("split image", &kept, &split["image"]);
        assert_eq!(kept.permutation(), w.times_simple(k as u32));
        format!("{n} checks, {cases} diagrams, worked split matches")
    });
}

#[test]
fn criterion_08_nabla() {
    criterion(8, "nabla identity", || {
        let reports = run(&[Identity::Nabla], &s4());
        assert_eq!(reports.len(), 48);
        let (n, _) = require_all_pass(&reports);
        format!("{n} checks over S4, both variants")
    });
}

#[test]
fn criterion_09_tab() {
    criterion(9, "tab bijection and Schur agreement", || {
        let reports = run(&[Identity::Tab], &s4());
        assert_eq!(reports.len(), Partition::in_box(3, 3).len());
        assert!(reports.iter().all(|r| r.lhs.is_some() && r.lhs == r.rhs));
        let (n, cases) = require_all_pass(&reports);
        format!("{n} shapes in the 3x3 box, {cases} pipe dreams")
    });
}

#[test]
fn criterion_10_insertion() {
    criterion(10, "insertion is the plactic product", || {
        let reports = run(&[Identity::Insertion], &s4());
        assert_eq!(reports.len(), Partition::in_box(3, 3).len());
        let (n, cases) = require_all_pass(&reports);
        format!("{n} shapes, {cases} (P, I) pairs")
    });
}

/// Every diagram of an `m × n` matrix rectifies into reduced Grassmannian
/// pipe dreams of complementary shapes.
fn rsk_shapes(m: u32, n: u32) -> usize {
    let mut count = 0;
    for bits in 0u32..1 << (m * n) {
        let a: Vec<Vec<u8>> =
            (0..m).map(|i| (0..n).map(|j| ((bits >> (i * n + j)) & 1) as u8).collect()).collect();
        let w = matrix_diagram(&a);
        assert!(w.is_reduced());
        assert_eq!(w.permutation(), Permutation::bigrass(m, n));
        let r = rect(&w).unwrap();
        let shape = tab(&r.v, m).unwrap().shape();
        let dual = shape.dagger(m, n).unwrap();
        assert!(r.v.is_reduced() && r.u.is_reduced() && r.v.is_ordinary() && r.u.is_ordinary());
        assert_eq!(r.v.permutation(), Permutation::grass(&shape, m).unwrap());
        assert_eq!(r.u.permutation(), Permutation::grass(&dual, n).unwrap());
        count += 1;
    }
    count
}

#[test]
fn criterion_11_rsk() {
    criterion(11, "dual RSK via rectification", || {
        let reports = run(&[Identity::Rsk], &s4());
        let cases: Vec<usize> = reports.iter().map(|r| r.cases).collect();
        assert_eq!(cases, vec![512, 4096]);
        require_all_pass(&reports);
        let boxes: usize = (1..=3).flat_map(|m| (1..=3).map(move |n| rsk_shapes(m, n))).sum();

        let scan = run(&[Identity::Conjecture], &s4());
        let mut found = Vec::new();
        for r in &scan {
            assert!(matches!(r.status, Status::Pass | Status::Finding));
            found.push(format!("{} {} counterexamples of {}", r.params, r.violations, r.cases));
            for f in &r.failures {
                let _ = writeln!(std::io::stderr(), "  conjecture counterexample: {f}");
            }
        }
        format!("512 + 4096 matrices, {boxes} shape checks up to 3x3; conjecture scan: {}", found.join(", "))
    });
}

#[test]
fn criterion_12_oracles() {
    criterion(12, "oracle equivalence", || {
        let reports = run(&[Identity::Oracle], &s4());
        assert_eq!(reports.len(), 24);
        let (n, cases) = require_all_pass(&reports);
        format!("{n} permutations, {cases} comparisons")
    });
}
