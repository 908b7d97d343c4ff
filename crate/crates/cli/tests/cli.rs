//! End-to-end tests against the built binary: exit codes, output formats,
//! determinism, and the documented error paths.

use std::path::Path;
use std::process::{Command, Output};

fn mff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gdet_z3_passes_and_prints_factors() {
    let out = mff(&["gdet", "--group", "Z3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(text.contains("x1^3"));
    assert!(text.contains("Phi_"));
}

#[test]
fn gdet_s3_passes() {
    let out = mff(&["gdet", "--group", "S3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("factorization [symbolic]: PASS"));
}

#[test]
fn gdet_z9_symbolic_suggests_eval_mode() {
    let out = mff(&["gdet", "--group", "Z9"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("size limit"), "{err}");
    assert!(err.contains("evaluation"), "{err}");
}

#[test]
fn gdet_unknown_group_is_usage_error() {
    let out = mff(&["gdet", "--group", "E8"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gdet_s4_eval_mode() {
    let out = mff(&["gdet", "--group", "S4", "--mode", "eval", "--points", "10"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("factorization [evaluation]: PASS"));
}

#[test]
fn gdet_json_embeds_config_and_version() {
    let out = mff(&["gdet", "--group", "Z4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["artifact"]["name"], "mff");
    assert!(doc["artifact"]["version"].is_string());
    assert_eq!(doc["config"]["command"], "gdet");
    assert_eq!(doc["config"]["group"], "Z4");
    assert_eq!(doc["result"]["verdict"]["pass"], true);
}

#[test]
fn kchar_vanishing_s3() {
    let out = mff(&["kchar", "--group", "S3", "--check", "vanishing"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn kchar_equivalence_q8() {
    let out = mff(&[
        "kchar",
        "--group",
        "Q8",
        "--check",
        "equivalence",
        "--k",
        "3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn kchar_s4_vanishing_runs_the_big_scan() {
    let out = mff(&["kchar", "--group", "S4", "--check", "vanishing"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("331776"),
        "expected the 24^4 scan, got:\n{text}"
    );
    assert!(text.contains("overall: PASS"));
}

#[test]
fn kchar_all_suites_on_q8() {
    let out = mff(&["kchar", "--group", "Q8"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for check in [
        "vanishing",
        "symmetry",
        "equivalence",
        "direct-sum-shuffle",
        "whitney",
    ] {
        assert!(text.contains(check), "missing {check} in:\n{text}");
    }
}

#[test]
fn markov_tree_text_and_count() {
    let out = mff(&["markov", "tree", "--max", "1000"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1 1 1"));
    assert!(text.contains("2 169 985"));
    assert!(text.contains("count: 13"));
}

#[test]
fn markov_tree_json_lines_parse() {
    let out = mff(&["markov", "tree", "--max", "100", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // header + triples + trailing count
    let head: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(head["config"]["command"], "markov tree");
    for line in &lines[1..lines.len() - 1] {
        let t: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(t["x"].is_string() && t["y"].is_string() && t["z"].is_string());
    }
    let tail: serde_json::Value = serde_json::from_str(lines[lines.len() - 1]).unwrap();
    assert_eq!(tail["count"], 7);
}

#[test]
fn markov_unique_scan() {
    let out = mff(&["markov", "unique", "--max", "100000"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no collision"));
}

#[test]
fn markov_modp_report() {
    let out = mff(&["markov", "modp", "--p", "7", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let r = &doc["result"];
    assert_eq!(r["p"], 7);
    assert!(r["solutions"].is_number());
    assert!(r["solutions_nonzero_coords"].is_number());
    assert!(r["orbit"].is_number());
    assert_eq!(r["equal"], true);
    assert_eq!(r["orbit_subset_of_solutions"], true);
}

#[test]
fn markov_modp_rejects_composite() {
    let out = mff(&["markov", "modp", "--p", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not prime"));
}

#[test]
fn markov_mordell_counts() {
    let out = mff(&["markov", "mordell", "--p", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["count"], 10);
}

#[test]
fn fricke_check_passes() {
    let out = mff(&["fricke", "check", "--samples", "200", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn fricke_lift_examples() {
    let out = mff(&["fricke", "lift", "--triple", "1,1,2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("(3, 3, 6)"));
    assert!(text.contains("residual 0"));

    let bad = mff(&["fricke", "lift", "--triple", "1,2,3"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn fricke_length_values_and_domain() {
    let out = mff(&["fricke", "length", "--jc", "-2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0.000000000000"));

    let out = mff(&["fricke", "length", "--jc", "-4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let l = doc["result"]["length"].as_f64().unwrap();
    assert!((l - 2.633_915_793_849_633).abs() < 1e-6);

    let out = mff(&["fricke", "length", "--jc", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("domain"));
}

#[test]
fn fricke_orbit_keeps_surface() {
    let out = mff(&[
        "fricke", "orbit", "--triple", "3,3,6", "--steps", "8", "--seed", "4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("surface residual invariant: PASS"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec![
            "fricke",
            "check",
            "--samples",
            "100",
            "--seed",
            "7",
            "--format",
            "json",
        ],
        vec!["markov", "tree", "--max", "1000", "--format", "json"],
        vec!["gdet", "--group", "Q8", "--format", "json"],
        vec![
            "fricke", "orbit", "--triple", "3,3,6", "--steps", "10", "--format", "json",
        ],
    ] {
        let a = mff(&args);
        let b = mff(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.jsonl");
    let out = mff(&[
        "markov",
        "tree",
        "--max",
        "100",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 9); // header + 7 triples + count
}

#[test]
fn custom_group_file_resolves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2.json");
    std::fs::write(&path, r#"{"name":"Z2","order":2,"table":[[0,1],[1,0]]}"#).unwrap();
    let out = mff(&["gdet", "--group", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn invalid_group_file_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"name":"bad","order":2,"table":[[0,0],[1,1]]}"#).unwrap();
    let out = mff(&["gdet", "--group", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("identity"));
}

#[test]
fn kchar_symmetry_guard_on_large_groups() {
    let out = mff(&["kchar", "--group", "S4", "--check", "symmetry"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("size limit"));
}

#[test]
fn valid_custom_table_resolves() {
    let dir = tempfile::tempdir().unwrap();
    let s3_table = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/char_tables/s3.json");
    let table_path = dir.path().join("table.json");
    std::fs::copy(s3_table, &table_path).unwrap();
    let out = mff(&["gdet", "--group", "S3", "--table", table_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn custom_table_file_is_validated() {
    // feed the Q8 table to D4: same value grid, but the class partition of
    // D4 does not match the file, so validation must reject it
    let dir = tempfile::tempdir().unwrap();
    let q8_table = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/char_tables/q8.json");
    let table_path = dir.path().join("table.json");
    std::fs::copy(q8_table, &table_path).unwrap();
    let out = mff(&[
        "gdet",
        "--group",
        "D4",
        "--table",
        table_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("classes"), "{}", stderr(&out));
}
