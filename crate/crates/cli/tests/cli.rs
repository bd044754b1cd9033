use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use accessneeds::fixtures;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_accessneeds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn validate_pyramid() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pyramid.json", fixtures::PYRAMID);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\nwarnings: 8\n"));
    assert!(stderr(&out).is_empty());
}

#[test]
fn validate_works_diary_without_policy() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "works-diary.json", fixtures::WORKS_DIARY);
    let out = run(&["validate", "--format", "json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let warnings = json["warnings"].as_array().unwrap();
    assert_eq!(warnings.len(), 2);
    assert!(warnings.iter().all(|w| w["kind"] == "undefined_access"));
}

#[test]
fn validate_dangling_reference_is_a_structural_failure() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"version": 1,
        "assets": [{"name": "A", "kind": "system"}],
        "associations": [{"source": "A", "target": "Missing", "sourceNeeds": ["read"]}]}"#;
    let path = write(dir.path(), "bad.json", doc);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(stderr(&out).contains("UnknownAsset at associations[0].target"), "{}", stderr(&out));
}

#[test]
fn validate_clean_model_exits_zero_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.json", r#"{"version": 1}"#);
    let out = run(&["validate", "--format", "json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn validate_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pyramid.json", fixtures::PYRAMID);
    let report = dir.path().join("report.txt");
    let out = run(&["validate", path.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(report).unwrap().contains("Absent policies Y"));
}

#[test]
fn check_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "pyramid.json", fixtures::PYRAMID);
    let out = run(&["check", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let conflict = r#"{"version": 1,
        "assets": [{"name": "S", "kind": "people"}, {"name": "R", "kind": "information"}],
        "goals": [{"name": "Q", "kind": "requirement"}],
        "policy": [
            {"requirement": "Q", "subject": "S", "access": "read", "resource": "R", "permission": "allow"},
            {"requirement": "Q", "subject": "S", "access": "read", "resource": "R", "permission": "deny"}]}"#;
    let bad = write(dir.path(), "conflict.json", conflict);
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ConflictingPermission"));

    let out = run(&["check", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn check_reports_warnings_but_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "q.json", r#"{"version": 1, "goals": [{"name": "Q", "kind": "requirement"}]}"#);
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning: UnownedRequirement"));
}

#[test]
fn schema_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", r#"{"version": 1, "assets": [{"name": "Alice", "kind": "person"}]}"#);
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("assets[0].kind"), "{}", stderr(&out));
}

#[test]
fn export_views() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pyramid.json", fixtures::PYRAMID);
    let out_path = dir.path().join("assets.dot");
    let out = run(&["export", "--view", "asset", path.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = fs::read_to_string(&out_path).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 7);

    let out = run(&["export", "--view", "goal", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.contains("[shape=")).count(), 8);

    let empty = write(dir.path(), "empty.json", r#"{"version": 1}"#);
    let out = run(&["export", "--view", "asset", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("digraph assets {"));

    let unwritable = dir.path().join("missing-dir").join("x.dot");
    let out = run(&["export", "--view", "asset", path.to_str().unwrap(), "--out", unwritable.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixture_command() {
    let out = run(&["fixture", "--name", "pyramid"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), fixtures::PYRAMID);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["policy"].as_array().unwrap().len(), 7);

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("wd.json");
    let out = run(&["fixture", "--name", "works-diary", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(json["assets"].as_array().unwrap().len(), 2);

    let out = run(&["fixture", "--name", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["validate", "x.json", "--colour"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "x.json", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn in_process_run_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pyramid.json", fixtures::PYRAMID);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = accessneeds_cli::run(["accessneeds", "validate", path.to_str().unwrap()], &mut out, &mut err);
    assert_eq!(code, accessneeds_cli::EXIT_WARNINGS);
    assert_eq!(out, run(&["validate", path.to_str().unwrap()]).stdout);
}
