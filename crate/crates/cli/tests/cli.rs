//! End-to-end tests of the `modelcat` binary: output bytes and exit codes.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn modelcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelcat"))
        .args(args)
        .env_remove("MODELCAT_CHAIN_CAP")
        .output()
        .expect("binary runs")
}

fn modelcat_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelcat"))
        .args(args)
        .env_remove("MODELCAT_CHAIN_CAP")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn chains_beam() {
    let out = modelcat(&["chains", &fixture("beam.mcat")]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "1. BE -> R -> T\n");
}

#[test]
fn chains_aero_listing() {
    let out = modelcat(&["chains", &fixture("aero.mcat")]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "1. LST -> LQS -> HNL -> NLU\n\
         2. LST -> LQS -> MQS -> LU -> NLU\n\
         3. LST -> LQS -> QS -> CQS -> MNL -> NLU\n\
         4. LST -> MBM -> LU -> NLU\n\
         5. LST -> ST -> QS -> CQS -> MNL -> NLU\n"
    );
}

#[test]
fn classify_both_fixtures() {
    let out = modelcat(&["classify", &fixture("aero.mcat")]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "partial, case IV, most_complex=NLU, simplest=LST\n"
    );

    let out = modelcat(&["classify", &fixture("beam.mcat")]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "total, case IV, most_complex=T, simplest=BE\n"
    );
}

#[test]
fn extremes() {
    let out = modelcat(&["extremes", &fixture("beam.mcat")]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "most_complex=T\nsimplest=BE\n");
}

#[test]
fn check_passes_on_beam() {
    let out = modelcat(&["check", &fixture("beam.mcat")]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("pass dimension.single-tag"));
}

#[test]
fn check_reports_parse_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.mcat");
    std::fs::write(
        &path,
        "catalog \"X\" dimension \"d\" {\nmodel T { assumes }\n}\n",
    )
    .unwrap();
    let out = modelcat(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr(&out);
    assert!(
        err.contains(":2:19: error[E005]: expected at least one assumption id"),
        "{err}"
    );
    assert!(stdout(&out).is_empty());
}

#[test]
fn check_flags_unlinked_co_formulations() {
    let beam = std::fs::read_to_string(fixture("beam.mcat")).unwrap();
    let stripped: String = beam
        .lines()
        .filter(|l| !l.trim_start().starts_with("convertible "))
        .collect::<Vec<_>>()
        .join("\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unlinked.mcat");
    std::fs::write(&path, stripped).unwrap();

    let out = modelcat(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("fail convertibility.linked: unlinked co-formulations [T] (warning)"),
        "{text}"
    );
}

#[test]
fn order_matrix() {
    let out = modelcat(&["order", &fixture("beam.mcat")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("model"));
    assert!(lines[1].starts_with("BE") && lines[1].contains("equal"));
    assert!(lines[3].starts_with("T") && lines[3].contains("higher"));
}

#[test]
fn order_and_diff_require_sets() {
    let out = modelcat(&["order", &fixture("aero.mcat")]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("declared mode"));

    let out = modelcat(&["diff", &fixture("aero.mcat"), "LST", "NLU"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("declared mode"));
}

#[test]
fn diff_beam() {
    let out = modelcat(&["diff", &fixture("beam.mcat"), "BE", "R"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "only in BE: a6\nonly in R: (none)\nshared: a1 a2 a3 a4 a5\n"
    );

    let out = modelcat(&["diff", &fixture("beam.mcat"), "BE", "ghost"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown model `ghost`"));
}

#[test]
fn diagram_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("beam.dot");
    let out = modelcat(&[
        "diagram",
        &fixture("beam.mcat"),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph \"Beam\" {"));
    assert_eq!(dot.matches(" -> ").count(), 2);

    let out = modelcat(&["diagram", &fixture("beam.mcat"), "--composites"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("\"BE\" -> \"T\" [style=dashed];"));
}

#[test]
fn report_is_valid_json_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = modelcat(&[
            "report",
            &fixture("aero.mcat"),
            "-o",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    }
    let text_a = std::fs::read(&a).unwrap();
    let text_b = std::fs::read(&b).unwrap();
    assert_eq!(text_a, text_b, "report bytes must be reproducible");

    let value: serde_json::Value = serde_json::from_slice(&text_a).unwrap();
    assert_eq!(value["catalog"]["mode"], "declared");
    assert_eq!(value["analyses"]["ordering"], "partial");
    assert_eq!(value["analyses"]["simplest"], "LST");
    assert_eq!(value["analyses"]["chains"].as_array().unwrap().len(), 5);
}

#[test]
fn chain_cap_flag_env_and_precedence() {
    let out = modelcat(&["chains", &fixture("aero.mcat"), "--max", "2"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("more than 2 maximal chains"));

    let out = modelcat_env(
        &["chains", &fixture("aero.mcat")],
        "MODELCAT_CHAIN_CAP",
        "2",
    );
    assert_eq!(exit_code(&out), 3);

    // The flag wins over the environment.
    let out = modelcat_env(
        &["chains", &fixture("aero.mcat"), "--max", "10"],
        "MODELCAT_CHAIN_CAP",
        "2",
    );
    assert_eq!(exit_code(&out), 0);

    let out = modelcat_env(
        &["chains", &fixture("aero.mcat")],
        "MODELCAT_CHAIN_CAP",
        "zap",
    );
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("invalid MODELCAT_CHAIN_CAP"));
}

#[test]
fn cycle_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.mcat");
    std::fs::write(
        &path,
        "catalog \"C\" dimension \"d\" mode declared {\nobject a b\narrow f : a -> b\narrow g : b -> a\n}\n",
    )
    .unwrap();
    let out = modelcat(&["chains", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("cycle detected among declared arrows: a -> b -> a"));
}

#[test]
fn equal_sets_warn_but_do_not_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.mcat");
    std::fs::write(
        &path,
        "catalog \"D\" dimension \"d\" {\nassumption a1 \"x\"\nmodel m1 { assumes a1 }\nmodel m2 { assumes a1 }\n}\n",
    )
    .unwrap();
    let out = modelcat(&["classify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stderr(&out).contains("identical assumption sets"));
    assert_eq!(
        stdout(&out),
        "partial, case I, most_complex=none, simplest=none\n"
    );
}

#[test]
fn stdin_via_dash() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_modelcat"))
        .args(["chains", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let beam = std::fs::read_to_string(fixture("beam.mcat")).unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(beam.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1. BE -> R -> T\n");
}

#[test]
fn usage_errors_and_help() {
    let out = modelcat(&["frobnicate", "x"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("Usage"));

    let out = modelcat(&["chains", "/no/such/file.mcat"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("cannot read"));

    let out = modelcat(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("Exit codes"));

    for sub in [
        "check", "order", "classify", "extremes", "chains", "diagram", "diff", "report",
    ] {
        let out = modelcat(&[sub, "--help"]);
        assert_eq!(exit_code(&out), 0, "{sub} --help");
        assert!(stdout(&out).contains("Usage"), "{sub} --help");
    }
}
