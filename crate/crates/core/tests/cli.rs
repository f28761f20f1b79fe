use std::path::Path;
use std::process::{Command, Output};

fn bookpop(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bookpop")).args(args).current_dir(dir).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> Vec<u8> {
    let out = bookpop(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn small_corpus(dir: &Path) {
    ok(dir, &["synth", "--seed", "3", "--books-per-category", "3", "--out", "c.jsonl"]);
}

#[test]
fn synth_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["synth", "--seed", "3", "--books-per-category", "2", "--out", "a.jsonl"]);
    ok(d, &["synth", "--seed", "3", "--books-per-category", "2", "--out", "b.jsonl"]);
    ok(d, &["synth", "--seed", "4", "--books-per-category", "2", "--out", "c.jsonl"]);
    let read = |n: &str| std::fs::read(d.join(n)).unwrap();
    assert_eq!(read("a.jsonl"), read("b.jsonl"));
    assert_ne!(read("a.jsonl"), read("c.jsonl"));
}

#[test]
fn validate_accepts_generated_corpus() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    ok(dir.path(), &["validate", "--in", "c.jsonl"]);
}

#[test]
fn invalid_records_exit_one_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    small_corpus(d);
    let text = std::fs::read_to_string(d.join("c.jsonl")).unwrap();
    let (idx, line) = text.lines().enumerate().find(|(_, l)| l.contains("\"votes\":")).unwrap();
    let at = line.find("\"votes\":").unwrap() + "\"votes\":".len();
    let end = at + line[at..].find(',').unwrap();
    let broken = format!("{}0{}", &line[..at], &line[end..]);
    let mutated: Vec<String> = text
        .lines()
        .enumerate()
        .map(|(i, l)| if i == idx { broken.clone() } else { l.to_string() })
        .collect();
    std::fs::write(d.join("bad.jsonl"), mutated.join("\n") + "\n").unwrap();
    let before = std::fs::read(d.join("bad.jsonl")).unwrap();
    for cmd in ["validate", "featurize"] {
        let out = bookpop(d, &[cmd, "--in", "bad.jsonl"]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(&format!("line {}", idx + 1)), "{cmd}: {err}");
    }
    assert_eq!(std::fs::read(d.join("bad.jsonl")).unwrap(), before, "input was modified");
}

#[test]
fn malformed_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.jsonl"), "{not json\n").unwrap();
    assert_eq!(bookpop(dir.path(), &["validate", "--in", "x.jsonl"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    small_corpus(d);
    for args in [
        vec!["frobnicate"],
        vec!["synth"],
        vec!["rank", "--in", "c.jsonl", "--top", "0"],
        vec!["rank", "--in", "c.jsonl", "--top", "27"],
        vec!["eval", "cv", "--in", "c.jsonl", "--selector", "bogus"],
        vec!["eval", "cv", "--in", "c.jsonl", "--kernel", "linear", "--gamma", "0.5"],
        vec!["--jobs", "0", "validate", "--in", "c.jsonl"],
    ] {
        assert_eq!(bookpop(d, &args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_numeric_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bookpop(d, &["synth", "--noise-sigma", "-1", "--out", "c.jsonl"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!d.join("c.jsonl").exists());
    small_corpus(d);
    assert_eq!(bookpop(d, &["eval", "cv", "--in", "c.jsonl", "--C", "-1"]).status.code(), Some(1));
}

#[test]
fn rank_top_all_matches_default_and_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    small_corpus(d);
    let full = ok(d, &["rank", "--in", "c.jsonl"]);
    assert_eq!(ok(d, &["rank", "--in", "c.jsonl", "--top", "26"]), full);
    let top3 = String::from_utf8(ok(d, &["rank", "--in", "c.jsonl", "--top", "3"])).unwrap();
    let full_text = String::from_utf8(full).unwrap();
    let full_lines: Vec<&str> = full_text.lines().collect();
    let top_lines: Vec<&str> = top3.lines().collect();
    assert_eq!(top_lines.len(), 4);
    assert_eq!(top_lines, full_lines[..4]);

    ok(d, &["featurize", "--in", "c.jsonl", "--out", "f.csv"]);
    let from_csv = String::from_utf8(ok(d, &["rank", "--in", "f.csv"])).unwrap();
    let names = |t: &str| t.lines().map(|l| l.split(',').next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&from_csv), names(&full_text));
}

#[test]
fn featurize_writes_header_and_one_row_per_book() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    small_corpus(d);
    let csv = String::from_utf8(ok(d, &["featurize", "--in", "c.jsonl"])).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 61);
    assert_eq!(lines[0].split(',').count(), 29);
}

#[test]
fn eval_cv_writes_json_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    small_corpus(d);
    let stdout = String::from_utf8(ok(d, &["eval", "cv", "--in", "c.jsonl", "--selector", "author", "--out", "cv.json"])).unwrap();
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("cv.json")).unwrap()).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 60);
    assert_eq!(std::fs::read_to_string(d.join("cv.txt")).unwrap(), stdout);
}
