//! Drives the installed binary end to end: flags, formats, exit codes,
//! environment overrides, and determinism of the emitted streams.

use std::path::Path;
use std::process::{Command, Output};

fn polycut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycut"))
        .args(args)
        .env_remove("POLYCUT_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn enumerate_prints_records_and_counts() {
    let out = polycut(&["enumerate", "--dim", "3", "--max-facets", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    assert_eq!(stdout.lines().count(), 4, "1 + 1 + 2 records");
    for line in stdout.lines() {
        assert!(line.starts_with("{\"d\":3,"));
    }
    let stderr = stderr_of(&out);
    assert!(stderr.contains("n=4: 1, n=5: 1, n=6: 2"));
    assert!(stderr.lines().any(|l| l.starts_with("timing: ")));
}

#[test]
fn enumerate_counts_move_to_stdout_with_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let out = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "6",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).trim(), "n=4: 1, n=5: 1, n=6: 2");
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
}

#[test]
fn enumerate_rejects_too_few_facets() {
    let out = polycut(&["enumerate", "--dim", "3", "--max-facets", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("error"));
}

#[test]
fn unknown_flags_exit_with_usage() {
    let out = polycut(&["enumerate", "--dim", "3", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cutset_cap_aborts_with_exit_three() {
    let out = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "5",
        "--max-cutset-size",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("cutset"));
}

#[test]
fn graph6_stream_lists_keys() {
    let out = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "6",
        "--format",
        "graph6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "C~");
}

#[test]
fn multiple_formats_demand_an_output_path() {
    let out = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "5",
        "--format",
        "jsonl",
        "--format",
        "graph6",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let dot = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "5",
        "--format",
        "dot",
    ]);
    assert_eq!(dot.status.code(), Some(2));
}

#[test]
fn multiple_formats_fan_out_beside_the_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("catalog");
    let out = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "6",
        "--format",
        "jsonl",
        "--format",
        "graph6",
        "--format",
        "dot",
        "--output",
        base.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    assert!(base.exists());
    assert!(Path::new(&format!("{}.g6", base.display())).exists());
    let dot_dir = format!("{}_dot", base.display());
    let dots = std::fs::read_dir(&dot_dir).unwrap().count();
    assert_eq!(dots, 4);
}

#[test]
fn workers_env_and_flag_agree() {
    let flag = polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "7",
        "--workers",
        "4",
    ]);
    let env = Command::new(env!("CARGO_BIN_EXE_polycut"))
        .args(["enumerate", "--dim", "3", "--max-facets", "7"])
        .env("POLYCUT_WORKERS", "4")
        .output()
        .unwrap();
    let single = polycut(&["enumerate", "--dim", "3", "--max-facets", "7"]);
    assert_eq!(stdout_of(&flag), stdout_of(&env));
    assert_eq!(stdout_of(&flag), stdout_of(&single));
}

#[test]
fn repeated_runs_are_deterministic() {
    let first = polycut(&["enumerate", "--dim", "4", "--max-facets", "6"]);
    let second = polycut(&["enumerate", "--dim", "4", "--max-facets", "6"]);
    assert_eq!(stdout_of(&first), stdout_of(&second));
}

#[test]
fn analyze_pipeline_reports_and_summarizes() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.jsonl");
    polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "6",
        "--output",
        catalog.to_str().unwrap(),
    ]);
    let report = dir.path().join("analysis.jsonl");
    let out = polycut(&[
        "analyze",
        catalog.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("level  types"));
    assert!(stdout.contains("n=6"));
    assert!(!stdout.contains("FINDING"), "no violations at these sizes");
    let records = std::fs::read_to_string(&report).unwrap();
    assert_eq!(records.lines().count(), 4);
    assert!(records.lines().all(|l| l.starts_with("{\"key\":")));
    let cube_line = records
        .lines()
        .find(|l| l.contains("\"is_dantzig\":true"))
        .expect("a 6-facet type with a complementary pair");
    assert!(cube_line.contains("\"hirsch_margin\":0"));
}

#[test]
fn analyze_streams_records_when_no_output_given() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.jsonl");
    polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "5",
        "--output",
        catalog.to_str().unwrap(),
    ]);
    let out = polycut(&["analyze", catalog.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).lines().count(), 2, "records only on stdout");
    assert!(stderr_of(&out).contains("level  types"));
}

#[test]
fn analyze_handles_empty_and_missing_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    let out = polycut(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("empty catalog"));

    let missing = dir.path().join("missing.jsonl");
    let out = polycut(&["analyze", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_rejects_tampered_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.jsonl");
    polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "5",
        "--output",
        catalog.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&catalog).unwrap();
    let tampered: Vec<String> = text
        .lines()
        .map(|l| l.replace("\"cutset_size\":1", "\"cutset_size\":2"))
        .collect();
    std::fs::write(&catalog, tampered.join("\n")).unwrap();
    let out = polycut(&["analyze", catalog.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("error"));
}

#[test]
fn verify_gates_on_dimension_and_size() {
    let wrong_dim = polycut(&["verify", "--dim", "4", "--max-facets", "6"]);
    assert_eq!(wrong_dim.status.code(), Some(2));
    assert!(stderr_of(&wrong_dim).contains("oracle unavailable"));
    let too_big = polycut(&["verify", "--dim", "3", "--max-facets", "10"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn verify_passes_on_a_fresh_run_and_a_good_catalog() {
    let out = polycut(&["verify", "--dim", "3", "--max-facets", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("verify: n=6 OK (2 types)"));

    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.jsonl");
    polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "6",
        "--output",
        catalog.to_str().unwrap(),
    ]);
    let from_file = polycut(&[
        "verify",
        "--dim",
        "3",
        "--max-facets",
        "6",
        catalog.to_str().unwrap(),
    ]);
    assert_eq!(from_file.status.code(), Some(0));
}

#[test]
fn verify_flags_missing_and_extra_keys() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.jsonl");
    polycut(&[
        "enumerate",
        "--dim",
        "3",
        "--max-facets",
        "6",
        "--output",
        catalog.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&catalog).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    std::fs::write(&catalog, lines.join("\n")).unwrap();
    let out = polycut(&[
        "verify",
        "--dim",
        "3",
        "--max-facets",
        "6",
        catalog.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("MISMATCH"));
    assert!(stdout.contains("missing "));
}
