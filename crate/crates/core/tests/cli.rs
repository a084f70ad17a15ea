//! End-to-end runs of the `pdlab` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn pdlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pdlab"))
        .args(args)
        .env_remove("PDLAB_CAP_N")
        .env_remove("PDLAB_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn help_and_polynomials() {
    let help = pdlab(&["--help"], None);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("verify"));

    let g = pdlab(&["poly", "--perm", "132", "--kind", "G"], None);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(stdout(&g), "x1 + x2 + b*x1*x2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(pdlab(&["poly", "--perm", "1x2"], None).status.code(), Some(2));
    assert_eq!(pdlab(&["bogus"], None).status.code(), Some(2));
    let capped = pdlab(&["--cap-n", "3", "enum", "--perm", "1432", "--count-only"], None);
    assert_eq!(capped.status.code(), Some(3));
    let env_capped = Command::new(env!("CARGO_BIN_EXE_pdlab"))
        .args(["enum", "--perm", "1432", "--count-only"])
        .env("PDLAB_CAP_N", "3")
        .output()
        .unwrap();
    assert_eq!(env_capped.status.code(), Some(3));
}

#[test]
fn diagram_from_stdin_round_trips() {
    let flowed = pdlab(&["flow", "--op", "y+", "--diagram", "-"], Some(r#"{"black":[[1,1]],"red":[[1,1]]}"#));
    assert_eq!(flowed.status.code(), Some(0), "{}", String::from_utf8_lossy(&flowed.stderr));
    let text = stdout(&flowed);
    let back = pdlab(&["render", "--diagram", "-", "--format", "json"], Some(&text));
    assert_eq!(back.status.code(), Some(0), "{}", String::from_utf8_lossy(&back.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&back)).unwrap();
    assert_eq!(json["black"], serde_json::json!([[1, 1]]));
    assert_eq!(json["red"], serde_json::json!([[0, 2]]));
}

#[test]
fn rsk_paths_agree() {
    let out = pdlab(&["rsk", "--matrix", "11000;01101;00101;10010", "--both"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let classical = text.split("pipedream:").next().unwrap().trim_start_matches("classical:");
    let pipedream = text.split("pipedream:").nth(1).unwrap();
    assert_eq!(classical.trim(), pipedream.trim());
    assert!(text.contains("5 5 4 3\n4 4 2\n3 2 1\n1"));
}

#[test]
fn verify_reports_json() {
    let out = pdlab(&["--jobs", "2", "verify", "--identity", "oracle", "--max-n", "3", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = reports.as_array().expect("a JSON array of reports");
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}
