//! End-to-end tests of the command-line surface: exit codes, determinism,
//! and the serialization round trip.

use std::fs;
use std::process::Command;

const EXAMPLE: &str = "\
dim 3
basis -1 2 -1
basis 3 -1 -1
point 1 2 0
";

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_scarflift")
}

fn write_problem(dir: &tempfile::TempDir, text: &str) -> std::path::PathBuf {
    let path = dir.path().join("input.problem");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn markov_command() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, EXAMPLE);
    let out = Command::new(bin())
        .args(["markov"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("markov basis (3 elements):"));
    assert!(text.contains("generic: true"));
    assert!(text.contains("exact (codimension-1 saturated"));
}

#[test]
fn markov_rejects_non_antichain() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, "dim 3\nbasis 1 0 0\n");
    let out = Command::new(bin())
        .args(["markov"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn markov_z2() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, "dim 2\nbasis 1 -1\n");
    let out = Command::new(bin())
        .args(["markov"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("markov basis (1 elements):"));
}

#[test]
fn resolve_modes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, EXAMPLE);
    for (mode, ranks) in [
        ("lattice", "ranks: [1, 3, 2]"),
        ("sum", "ranks: [4, 5, 2]"),
        ("scarf-only", "ranks: [1, 3, 2]"),
    ] {
        let run = || {
            Command::new(bin())
                .args(["resolve", "--mode", mode])
                .arg(&problem)
                .output()
                .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.status.code(), Some(0), "mode {mode}");
        assert_eq!(a.stdout, b.stdout, "mode {mode} nondeterministic");
        let text = String::from_utf8(a.stdout).unwrap();
        assert!(text.contains(ranks), "mode {mode}: {text}");
        assert!(text.contains("dd-zero: pass"), "mode {mode}");
        assert!(text.contains("minimality: minimal"), "mode {mode}");
    }
}

#[test]
fn resolve_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, EXAMPLE);
    let cx = dir.path().join("sum.cx");
    let out = Command::new(bin())
        .args(["resolve", "--mode", "sum", "--out"])
        .arg(&cx)
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let verify = Command::new(bin())
        .args(["verify", "--complex"])
        .arg(&cx)
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(0));
    let text = String::from_utf8(verify.stdout).unwrap();
    assert!(text.contains("homogeneity: pass"));
    assert!(text.contains("dd-zero: pass"));

    // byte-exact serialize -> parse -> serialize
    let original = fs::read_to_string(&cx).unwrap();
    let reparsed = scarflift::serialize::parse_complex(&original).unwrap();
    assert_eq!(scarflift::serialize::render_complex(&reparsed), original);
}

#[test]
fn verify_flags_corrupted_entry() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, EXAMPLE);
    let cx = dir.path().join("sum.cx");
    Command::new(bin())
        .args(["resolve", "--mode", "sum", "--out"])
        .arg(&cx)
        .arg(&problem)
        .output()
        .unwrap();
    // flip the sign of one differential entry: homogeneity still holds but
    // the composite becomes nonzero
    let text = fs::read_to_string(&cx).unwrap();
    let mut done = false;
    let corrupted: Vec<String> = text
        .lines()
        .map(|l| {
            if !done && l.starts_with("d 2 ") {
                done = true;
                let mut parts = l.splitn(5, ' ');
                let d = parts.next().unwrap();
                let k = parts.next().unwrap();
                let r = parts.next().unwrap();
                let c = parts.next().unwrap();
                let poly = parts.next().unwrap();
                let negated = scarflift::poly::LaurentPolynomial::parse(poly, 3)
                    .unwrap()
                    .negate()
                    .render();
                format!("{d} {k} {r} {c} {negated}")
            } else {
                l.to_string()
            }
        })
        .collect();
    assert!(done, "no d 2 entry found to corrupt");
    let bad = dir.path().join("bad.cx");
    fs::write(&bad, corrupted.join("\n") + "\n").unwrap();
    let verify = Command::new(bin())
        .args(["verify", "--complex"])
        .arg(&bad)
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(3));
    let text = String::from_utf8(verify.stdout).unwrap();
    assert!(text.contains("dd-zero: FAIL"));
    assert!(text.contains("nonzero composite"));
}

#[test]
fn hull_check_example() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, EXAMPLE);
    let out = Command::new(bin())
        .args(["hull-check"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("comparison: MATCH"));
    assert!(text.contains("identical interior faces"));
}

#[test]
fn hull_check_refuses_non_generic() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, "dim 3\nbasis 1 -1 0\n");
    let out = Command::new(bin())
        .args(["hull-check"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not generic"));
}

#[test]
fn demo_command_passes() {
    let out = Command::new(bin()).arg("demo").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.contains("note:"));
}

#[test]
fn usage_error_is_exit_one() {
    let out = Command::new(bin()).args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_problem_file() {
    let out = Command::new(bin())
        .args(["markov", "/nonexistent/problem"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_problem_is_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(&dir, "dim 3\nbasis 1 2\n");
    let out = Command::new(bin())
        .args(["markov"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
}
