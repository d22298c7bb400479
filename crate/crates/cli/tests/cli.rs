//! End-to-end checks of the binary: output formats, exit codes and
//! report determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weldmilnor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("weldmilnor-test-{}-{}", std::process::id(), name));
    fs::write(&path, contents).expect("write temp file");
    path
}

const W21: &str =
    r#"{"m":2,"strands":[[{"id":1,"role":"u","sign":1}],[{"id":1,"role":"o","sign":1}]]}"#;

#[test]
fn invariants_of_generator() {
    let file = temp_file("w21.json", W21);
    let out = run(&["invariants", file.to_str().unwrap(), "--max-len", "2", "--non-repeated"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "sequence\tvalue\n1,2\t0\n2,1\t1\n");
}

#[test]
fn invariants_of_trivial_link() {
    let file = temp_file(
        "triv3.json",
        r#"{"m":3,"strands":[[],[],[]]}"#,
    );
    let out = run(&["invariants", file.to_str().unwrap(), "--max-len", "3", "--non-repeated"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 13); // header + 6 + 6
    assert!(text.lines().skip(1).all(|l| l.ends_with("\t0")));
}

#[test]
fn invariants_mod_reduction() {
    let file = temp_file("w21-cubed.json", &{
        // Build W_21^3 through the gen subcommand.
        let out = run(&["gen", "--m", "2", "--seq", "2", "--head", "1", "--power", "3"]);
        assert!(out.status.success());
        stdout(&out)
    });
    let out = run(&[
        "invariants",
        file.to_str().unwrap(),
        "--max-len",
        "2",
        "--non-repeated",
        "--mod",
        "2",
    ]);
    assert_eq!(stdout(&out), "sequence\tvalue\n1,2\t0\n2,1\t1\n");
}

#[test]
fn bad_json_exits_2() {
    let file = temp_file("bad.json", "{ not json");
    let out = run(&["invariants", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn invalid_diagram_exits_2() {
    let file = temp_file(
        "invalid.json",
        r#"{"m":1,"strands":[[{"id":1,"role":"o","sign":1}]]}"#,
    );
    let out = run(&["invariants", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["invariants"]); // missing file argument
    assert_eq!(out.status.code(), Some(1));
    let file = temp_file("w21b.json", W21);
    let out = run(&["normal-form", file.to_str().unwrap(), "--relation", "vn-sv"]);
    assert_eq!(out.status.code(), Some(1)); // --n missing
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normal_form_sv_ignores_n() {
    let file = temp_file("w21c.json", W21);
    let out = run(&["normal-form", file.to_str().unwrap(), "--relation", "sv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let json = lines.next().unwrap();
    assert!(json.starts_with('{'));
    assert_eq!(lines.next().unwrap(), "k\ti\tI\texponent");
    assert_eq!(lines.next().unwrap(), "1\t1\t2\t1");
    assert_eq!(lines.next().unwrap(), "1\t2\t1\t0");
}

#[test]
fn normal_form_vn_reduces_exponents() {
    let gen3 = run(&["gen", "--m", "2", "--seq", "2", "--head", "1", "--power", "3"]);
    let file = temp_file("w21cubed.json", &stdout(&gen3));
    let out = run(&[
        "normal-form",
        file.to_str().unwrap(),
        "--relation",
        "vn-sv",
        "--n",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1\t1\t2\t1\n"));
    assert!(text.contains("1\t2\t1\t0\n"));
}

#[test]
fn normal_form_writes_output_file() {
    let file = temp_file("w21d.json", W21);
    let out_path = std::env::temp_dir().join(format!("weldmilnor-nf-{}.json", std::process::id()));
    let out = run(&[
        "normal-form",
        file.to_str().unwrap(),
        "--relation",
        "sv",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = fs::read_to_string(&out_path).unwrap();
    assert!(written.starts_with('{'));
    // stdout then carries only the exponent table.
    assert!(stdout(&out).starts_with("k\ti\tI\texponent\n"));
}

#[test]
fn apply_move_round_trip() {
    let file = temp_file("triv2.json", r#"{"m":2,"strands":[[],[]]}"#);
    let inserted = run(&[
        "apply-move",
        file.to_str().unwrap(),
        "--move",
        "2n",
        "--site",
        "1,0,2,0",
        "--n",
        "2",
    ]);
    assert!(inserted.status.success());
    let file2 = temp_file("twisted.json", stdout(&inserted).trim());
    let deleted = run(&[
        "apply-move",
        file2.to_str().unwrap(),
        "--move",
        "2n",
        "--site",
        "1,0,2,0",
        "--n",
        "2",
        "--reverse",
    ]);
    assert!(deleted.status.success());
    assert_eq!(stdout(&deleted).trim(), r#"{"m":2,"strands":[[],[]]}"#);
    // Pattern mismatch on the empty diagram is an input error.
    let bad = run(&[
        "apply-move",
        file.to_str().unwrap(),
        "--move",
        "vn",
        "--site",
        "1,0,2,0",
        "--n",
        "2",
        "--reverse",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn equiv_subcommand() {
    let a = temp_file("eq-a.json", W21);
    let b = temp_file("eq-b.json", r#"{"m":2,"strands":[[],[]]}"#);
    let out = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap(), "--relation", "sv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "false");
    let out = run(&[
        "equiv",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--relation",
        "vn-sv",
        "--n",
        "1",
    ]);
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn verify_reports_are_deterministic() {
    let run1 = run(&["verify", "--suite", "2n", "--seed", "9", "--trials", "6"]);
    let run2 = run(&["verify", "--suite", "2n", "--seed", "9", "--trials", "6"]);
    assert!(run1.status.success());
    assert_eq!(stdout(&run1), stdout(&run2));
    let other_seed = run(&["verify", "--suite", "2n", "--seed", "10", "--trials", "6"]);
    assert_ne!(stdout(&run1), stdout(&other_seed));
}

#[test]
fn verify_counting_summary() {
    let out = run(&["verify", "--suite", "counting"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m=2 n=2 classes=4 expected=4 PASS"));
    assert!(text.contains("m=2 n=3 classes=9 expected=9 PASS"));
    assert!(text.contains("m=3 n=2 classes=512 expected=512 PASS"));
}

#[test]
fn count_subcommand() {
    let out = run(&["count", "--m", "4", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m=4 s_m=12 w_m=32"));
    assert!(text.contains("n=2 order_vn_sv=4294967296"));
}

#[test]
fn gen_rejects_bad_sequence() {
    let out = run(&["gen", "--m", "3", "--seq", "3,2", "--head", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
