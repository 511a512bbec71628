//! Process-level behaviour of the `extcalc` binary.

use std::process::{Command, Output};

use extcalc_cli::EquationDoc;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extcalc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).unwrap()
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    for args in [
        &["derive", "--k", "1", "--n", "3", "--r", "2"][..],
        &["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "yang-mills"],
        &["derive", "--k", "1", "--n", "3", "--r", "7", "--preset", "maxwell"],
        &["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--m", "x"],
        &["verify", "--suite", "topology"],
        &["verify", "--trials", "0"],
        &["eval", "--expr", "e[2,1]", "--k", "1", "--n", "3"],
        &["eval", "--expr", "e[1] . e[1,2]", "--k", "1", "--n", "3"],
        &["eval", "--expr", "e[1] ? e[2]", "--k", "1", "--n", "3"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn unsorted_blade_diagnostic() {
    let out = run(&["eval", "--expr", "e[2,1]", "--k", "1", "--n", "3"]);
    assert!(stderr(&out).contains("indices must be strictly increasing"), "{}", stderr(&out));
}

#[test]
fn eval_examples() {
    let out = run(&["eval", "--expr", "e[1] ^ e[2]", "--k", "0", "--n", "3"]);
    assert_eq!(stdout(&out), "e[1,2]\n");
    let out = run(&["eval", "--expr", "e[1] _| e[1,2]", "--k", "1", "--n", "3"]);
    assert_eq!(stdout(&out), "-e[2]\n");
    let out = run(&["eval", "--expr", "-d^ (x0^2 ^ e[1]) + 1/2 ^ e[0,1]", "--k", "1", "--n", "3"]);
    assert_eq!(stdout(&out), "(2 ^ x0 + 1/2) ^ e[0,1]\n");
}

#[test]
fn json_documents_round_trip() {
    let out = run(&["derive", "--k", "2", "--n", "2", "--r", "3", "--preset", "maxwell", "--m", "1/2", "--xi", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let doc = EquationDoc::from_json(text.trim_end()).unwrap();
    let eq = doc.to_equation().unwrap();
    assert_eq!(EquationDoc::from_equation(&eq), doc);
    assert_eq!(eq.to_string(), "d_| ( d^ A ) + 1/4 * A = J + 1/3 * d^ ( d_| A )");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "calculus", "--seed", "9", "--trials", "3"][..],
        &["derive", "--k", "1", "--n", "2", "--r", "2", "--preset", "dual", "--format", "json"],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.stderr, second.stderr);
    }
}

#[test]
fn verify_lines_are_sorted_by_name() {
    let out = run(&["verify", "--suite", "all", "--seed", "1", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let names: Vec<&str> = stdout(&out)
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .map(|l| l.split(' ').nth(1).unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 30);
}
