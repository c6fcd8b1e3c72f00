use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qkostant"));
    c.env_remove("QKOSTANT_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/report.schema.json");
    let v: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

/// Runs a command with `--report` and returns (exit code, report).
fn with_report(name: &str, args: &[&str]) -> (i32, Value) {
    let path = scratch(&format!("{name}.json"));
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--report", &p]);
    let o = run(&full);
    let text = std::fs::read_to_string(&path).unwrap();
    (o.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn normalize_example() {
    let o = run(&["normalize", "--n", "3", "--stage", "1", "--expr", "x[2,3]*x[1,2]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x[1,2]*x[2,3] - (q^1 - q^-1)*x[1,3]*x[2,2]\n");
    for s in ["leftmost", "rightmost", "random"] {
        let o = run(&["normalize", "--n", "3", "--expr", "x[2,3]*x[1,2]", "--strategy", s]);
        assert_eq!(stdout(&o), "x[1,2]*x[2,3] - (q^1 - q^-1)*x[1,3]*x[2,2]\n");
    }
}

#[test]
fn hilbert_example() {
    // The invariant series 1/((1-t)(1-t^2)) has coefficients 1, 1, 2, 2.
    let o = run(&["hilbert", "--n", "2", "--max-degree", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "d       0  1   2   3\n\
         dims_A  1  4  10  20\n\
         dims_I  1  1   2   2\n\
         dims_H  1  3   5   7\n"
    );
}

#[test]
fn certify_exit_codes() {
    let o = run(&["kostant-certify", "--n", "1", "--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verdict: pass\n"));

    let o = run(&["kostant-certify", "--n", "2", "--max-degree", "2", "--diagonal-slack", "-1"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["kostant-certify", "--n", "2", "--max-degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-degree"));

    let o = run(&["kostant-certify", "--n", "2", "--max-degree", "2", "--mode", "sampled", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--samples"));
}

#[test]
fn usage_errors_name_the_flag() {
    for (args, flag) in [
        (vec!["normalize", "--n", "3", "--stage", "4", "--expr", "1"], "--stage"),
        (vec!["normalize", "--n", "0", "--expr", "1"], "--n"),
        (vec!["normalize", "--n", "2", "--expr", "x[3,1]"], "--expr"),
        (vec!["delta", "--n", "2", "--d", "3"], "--d"),
        (vec!["pbw-check", "--n", "2", "--max-overlap-degree", "2"], "--max-overlap-degree"),
        (vec!["suite", "--threads", "0"], "--threads"),
        (vec!["hilbert", "--n", "2"], "--max-degree"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(flag), "{args:?}");
    }
}

#[test]
fn threads_env_fallback() {
    let o = bin()
        .args(["hilbert", "--n", "2", "--max-degree", "2"])
        .env("QKOSTANT_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = bin()
        .args(["hilbert", "--n", "2", "--max-degree", "2"])
        .env("QKOSTANT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("QKOSTANT_THREADS"));
}

#[test]
fn failing_checks_exit_one() {
    let o = run(&["invariants", "--n", "2", "--check", "beta-literal"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["invariants", "--n", "2", "--expr", "x[1,2]", "--check", "alpha"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["invariants", "--n", "2", "--expr", "x[1,1] + x[2,2]", "--check", "alpha"]);
    assert_eq!(o.status.code(), Some(0));
}

const ALL_COMMANDS: &[&[&str]] = &[
    &["normalize", "--n", "2", "--expr", "x[2,2]*x[1,1]"],
    &["normalize", "--n", "2", "--expr", "x[2,2]*x[1,1]", "--strategy", "random"],
    &["relations", "--n", "2", "--stage", "2"],
    &["qdet", "--n", "3"],
    &["qdet", "--n", "3", "--rows", "1,3", "--cols", "2,3"],
    &["delta", "--n", "3"],
    &["delta", "--n", "3", "--prime", "--d", "2"],
    &["delta", "--n", "3", "--stage", "2"],
    &["invariants", "--n", "2"],
    &["pbw-check", "--n", "2"],
    &["tower-check", "--n", "3", "--max-degree", "2"],
    &["hilbert", "--n", "3", "--max-degree", "4"],
    &["kostant-certify", "--n", "2", "--max-degree", "3"],
    &["kostant-certify", "--n", "2", "--max-degree", "3", "--mode", "sampled", "--right"],
    &["invariant-ring", "--n", "2", "--max-degree", "3"],
    &["classical", "--n", "2", "--trials", "5", "--pairs", "10"],
    &["suite", "--n", "2", "--trials", "20"],
];

#[test]
fn reports_validate_against_schema() {
    let v = schema();
    for (k, args) in ALL_COMMANDS.iter().enumerate() {
        let (code, report) = with_report(&format!("schema{k}"), args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(report["command"], args[0]);
        let errors: Vec<String> = v.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    // A failing certificate is still a valid report.
    let (code, report) = with_report(
        "schema_fail",
        &["kostant-certify", "--n", "2", "--max-degree", "1", "--diagonal-slack", "1"],
    );
    assert_eq!(code, 1);
    assert_eq!(report["verdict"], "fail");
    assert!(v.is_valid(&report));
}

#[test]
fn schema_rejects_malformed_reports() {
    let v = schema();
    let (_, mut report) = with_report("malformed", &["hilbert", "--n", "1", "--max-degree", "1"]);
    assert!(v.is_valid(&report));
    report["dims_A"] = Value::String("many".into());
    assert!(!v.is_valid(&report));
    report["command"] = Value::String("unknown".into());
    assert!(!v.is_valid(&report));
}

#[test]
fn timing_is_opt_in() {
    let (_, plain) = with_report("plain", &["kostant-certify", "--n", "1", "--max-degree", "2"]);
    assert!(plain.get("elapsed_ms").is_none());
    let (_, timed) = with_report(
        "timed",
        &["kostant-certify", "--n", "1", "--max-degree", "2", "--timing"],
    );
    assert!(timed["elapsed_ms"].is_u64());
    assert!(schema().is_valid(&timed));
}

#[test]
fn seeds_change_sampled_points() {
    let args = ["kostant-certify", "--n", "2", "--max-degree", "1", "--mode", "sampled"];
    let (_, a) = with_report("seed_a", &[&args[..], &["--seed", "1"]].concat());
    let (_, b) = with_report("seed_b", &[&args[..], &["--seed", "2"]].concat());
    assert_ne!(a["sampled_points"], b["sampled_points"]);
    assert_eq!(a["verdict"], "pass");
    assert_eq!(b["verdict"], "pass");
}

#[test]
fn dispatch_in_process() {
    use clap::Parser;
    let cli = qkostant_cli::Cli::try_parse_from(["qkostant", "qdet", "--n", "2"]).unwrap();
    let out = qkostant_cli::dispatch(&cli).unwrap();
    assert_eq!(out.text, "x[1,1]*x[2,2] - q^1*x[1,2]*x[2,1]\n");
    assert!(out.pass);
}
