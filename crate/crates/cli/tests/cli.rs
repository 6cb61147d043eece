use std::io::Cursor;
use std::process::{Command, Output};

use qhaar::haar3::HaarTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhaar")).args(args).env_remove("QHAAR_CACHE_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn reduce_prints_the_normal_form() {
    assert_eq!(stdout(&["reduce", "e a"]).trim(), "a e - (q - q^-1) * b d");
    assert_eq!(stdout(&["reduce", "b a"]).trim(), "q^-1 * a b");
    assert_eq!(
        stdout(&["reduce", "--basis", "c e g a e k"]).trim(),
        "aek ceg + (q^3 - q) * afh ceg - (q - q^-1) * bdk ceg - (q^3 - 2*q + q^-1) * bfg cdh"
    );
}

#[test]
fn haar_values() {
    assert_eq!(stdout(&["haar", "a e k"]).trim(), "1/(q^6 + 2*q^4 + 2*q^2 + 1)");
    assert_eq!(stdout(&["haar", "a b"]).trim(), "0");
    assert_eq!(stdout(&["haar", "a e k", "--q", "1/2"]).trim(), "64/105");
    assert_eq!(stdout(&["haar", "a e a* e*"]).trim(), "q^2/(q^8 + 2*q^6 + 2*q^4 + 2*q^2 + 1)");
    assert_eq!(stdout(&["haar", "x11 x22"]).trim(), "1/(q^2 + 1)");
}

#[test]
fn bad_input_is_an_error() {
    let out = run(&["reduce", "a z"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 2"), "{err}");
    let out = run(&["haar", "a e k", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["haar", "a e k a e k", "--max-order", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_output_round_trips() {
    let text = stdout(&["table", "--order", "1"]);
    assert_eq!(text.lines().count(), 7);
    let (order, values) = HaarTable::read_order(Cursor::new(text)).unwrap();
    assert_eq!(order, 1);
    assert_eq!(values.len(), 6);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    stdout(&["table", "--order", "2", "--out", path.to_str().unwrap()]);
    let (order, values) = HaarTable::read_order(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!((order, values.len()), (2, 21));
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = stdout(&["--cache-dir", d, "haar", "a e k c e g"]);
    assert!(dir.path().join("order-2.jsonl").exists());
    assert_eq!(stdout(&["--cache-dir", d, "haar", "a e k c e g"]), first);
}

#[test]
fn verify_suites_pass() {
    for suite in ["appendixC", "source", "table1", "wg", "invariance"] {
        let text = stdout(&["verify", "--suite", suite]);
        assert!(text.lines().any(|l| l.starts_with("PASS")), "{suite}");
        assert!(!text.lines().any(|l| l.starts_with("FAIL")), "{suite}: {text}");
    }
    let text = stdout(&["verify", "--suite", "oracle", "--order", "2"]);
    assert!(text.contains("order 2: 21 unknowns"), "{text}");
    let appendix = stdout(&["verify", "--suite", "appendixC"]);
    assert!(appendix.lines().any(|l| l.starts_with("REPORT identity 8")));
}

#[test]
fn weingarten_examples() {
    let text = stdout(&["wg", "--example", "2"]);
    assert_eq!(text.lines().filter(|l| l.contains("printed value: matches")).count(), 4);
    assert!(text.contains("q -> 1: -1/24"));
    assert_eq!(run(&["wg", "--example", "9"]).status.code(), Some(2));
}
