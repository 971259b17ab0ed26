use std::path::PathBuf;
use std::process::{Command, Output};

fn nomlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nomlog"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "proofs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn checked_proof_prints_its_conclusion() {
    let o = nomlog(&["check-proof", &corpus("negbot.prf")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "|- ~bot");
}

#[test]
fn whole_corpus_checks() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "proofs"]
        .iter()
        .collect();
    let mut files: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path().to_string_lossy().into_owned())
        .collect();
    files.sort();
    let mut args = vec!["--format", "machine", "check-proof"];
    args.extend(files.iter().map(String::as_str));
    let o = nomlog(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), files.len());
    assert!(out.lines().all(|l| l.contains("status=ok")));
}

#[test]
fn rejected_proof_exits_one() {
    let o = nomlog(&["check-proof", "tests/data/bad_eigen.prf"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("eigen"), "{err}");
}

#[test]
fn malformed_input_exits_two() {
    let o = nomlog(&["check-proof", "tests/data/unclosed.prf"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nomlog(&["parse", "--formula", "forall a. (P(a)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
}

#[test]
fn parse_prints_canonical_form() {
    let o = nomlog(&[
        "--format",
        "machine",
        "parse",
        "--formula",
        "forall b. P(a) & Q(b, f(c))",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("kind=formula"));
    assert!(out.contains("fa={a,c}"), "{out}");
}

#[test]
fn term_axioms_report_five_laws() {
    let o = nomlog(&["--format", "machine", "check-axioms", "--algebra", "terms"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5, "{out}");
    assert!(out
        .lines()
        .all(|l| l.starts_with("subject=terms") && l.ends_with("fail=0")));
}

#[test]
fn lifted_axioms_cover_both_algebras() {
    let o = nomlog(&[
        "check-axioms",
        "--algebra",
        "lifted",
        "--carrier-size",
        "2",
        "--trials",
        "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lifted-values-2:") && out.contains("lifted-props-2:"));
}

#[test]
fn nba_suite_passes() {
    let o = nomlog(&[
        "--format",
        "machine",
        "check-nba",
        "--carrier-size",
        "2",
        "--trials",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 14);
}

#[test]
fn countermodel_is_printed() {
    let o = nomlog(&[
        "--format",
        "machine",
        "countermodel",
        "--sequent",
        "P(a) |- forall a. P(a)",
        "--max-size",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("found=true size=2"), "{out}");
    assert!(out.contains("model=pred P/1: (0)"), "{out}");
    assert!(out.contains("witness=true"));
}

#[test]
fn valid_sequent_has_no_countermodel() {
    let o = nomlog(&[
        "countermodel",
        "--sequent",
        "forall a. P(a) |- P(b)",
        "--max-size",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no countermodel"));
}

#[test]
fn eval_reports_validity() {
    let o = nomlog(&[
        "--format",
        "machine",
        "eval",
        "--model",
        "tests/data/swap.model",
        "--formula",
        "P(a)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid=false"));
    let o = nomlog(&[
        "--format",
        "machine",
        "eval",
        "--model",
        "tests/data/swap.model",
        "--formula",
        "forall a. ~(P(a) & P(f(a)))",
    ]);
    assert!(stdout(&o).contains("valid=true"));
}

#[test]
fn bridge_test_passes() {
    let o = nomlog(&["bridge-test", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bridge"));
}
