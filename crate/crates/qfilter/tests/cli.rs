use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn qfilter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfilter")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fact<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn godel_satisfies_s() {
    let o = qfilter(&["quantale", "--quantale", "godel", "--check", "s"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("condition (S): satisfied"));
}

#[test]
fn interior_lukasiewicz_block_fails_s_with_witness() {
    let o = qfilter(&["quantale", "--quantale", &data("block.json"), "--check", "s"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: lukasiewicz block (1/4, 1/2)"), "{}", stdout(&o));
}

#[test]
fn malformed_rational_is_an_input_error() {
    let o = qfilter(&["quantale", "--quantale", &data("bad_rational.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1/0"));
}

#[test]
fn unknown_file_or_builtin_is_an_input_error() {
    let o = qfilter(&["quantale", "--quantale", "no-such-quantale"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finite_quantale_axioms_pass() {
    for q in ["bool2", "godel3", "mv3", "chain5"] {
        let o = qfilter(&["quantale", "--quantale", q]);
        assert_eq!(o.status.code(), Some(0), "{q}: {}", stdout(&o));
    }
}

#[test]
fn s_check_on_a_finite_quantale_is_rejected() {
    let o = qfilter(&["quantale", "--quantale", "godel3", "--check", "s"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lukasiewicz_sup_is_one_exactly() {
    let o = qfilter(&["quantale", "--quantale", "lukasiewicz", "--check", "grid"]);
    assert_eq!(fact(&stdout(&o), "sup over p > 0 of p -> 0"), Some("1"));
}

#[test]
fn godel3_laws_pass() {
    let o = qfilter(&["laws", "--scenario", &data("godel3_laws.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(fact(&stdout(&o), "seeds"), Some("1, 2"));
}

#[test]
fn seed_flag_overrides_the_scenario() {
    let o = qfilter(&["laws", "--scenario", &data("godel3_laws.json"), "--seed", "9"]);
    assert_eq!(fact(&stdout(&o), "seeds"), Some("9"));
}

#[test]
fn classical_oracle_matches() {
    let o = qfilter(&["laws", "--scenario", &data("bool2_classical.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("classical oracle: match"));
}

#[test]
fn declared_maps_are_checked() {
    let o = qfilter(&["laws", "--scenario", &data("godel3_maps.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("== declared maps =="));
}

#[test]
fn non_conical_map_is_rejected_with_its_table() {
    let o = qfilter(&["laws", "--scenario", &data("nonconical_map.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("f(0) is not conical"), "{err}");
    assert!(err.contains(r#""1/2"]"#), "{err}");
}

#[test]
fn exhausted_budget_gives_partial_report() {
    let o = qfilter(&["laws", "--quantale", "godel3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("incomplete"));
}

#[test]
fn laws_report_is_deterministic_across_worker_counts() {
    let run = |w: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_qfilter"))
            .args(["laws", "--quantale", "mv3", "--seed", "4"])
            .env("QFILTER_WORKERS", w)
            .output()
            .unwrap();
        stdout(&o)
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn bad_worker_count_is_an_input_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_qfilter"))
        .args(["laws", "--quantale", "godel3"])
        .env("QFILTER_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn block_counterexample_is_a_violation() {
    let o = qfilter(&["counterexample", "--quantale", &data("block.json"), "--t", "3/8", "--s", "3/8"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(fact(&text, "verdict"), Some("VIOLATION"));
    assert_eq!(fact(&text, "step1_value"), Some("1"));
    assert_eq!(fact(&text, "step2_bound"), Some("1/4"));
}

#[test]
fn counterexample_scenario_file() {
    let o = qfilter(&["counterexample", "--scenario", &data("block_counterexample.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fact(&stdout(&o), "variant"), Some("filter"));
}

#[test]
fn lukasiewicz_expects_no_violation() {
    let o = qfilter(&["counterexample", "--quantale", "lukasiewicz", "--variant", "bounded"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(fact(&text, "verdict"), Some("NO_VIOLATION_EXPECTED"));
    assert!(fact(&text, "evaluated as").unwrap().starts_with("plain"));
}

#[test]
fn boundary_parameters_are_a_precondition_error() {
    let o = qfilter(&["counterexample", "--quantale", &data("block.json"), "--t", "3/8", "--s", "1/4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("precondition"));
}

#[test]
fn structured_report_mirrors_text() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qfilter(&["--format", "structured", "--out", out.to_str().unwrap(), "quantale", "--quantale", "product"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["command"], "quantale");
    let text = qfilter(&["quantale", "--quantale", "product"]);
    let lines = stdout(&text).lines().count();
    // header and footer lines are not entries
    assert_eq!(v["entries"].as_array().unwrap().len() + 2, lines);
}
