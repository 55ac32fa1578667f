//! End-to-end tests of the `knotpoly` binary: output shapes, exit codes,
//! and determinism.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

const LEFT_TREFOIL: &str = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";
const RIGHT_TREFOIL: &str = "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]";
const HOPF: &str = "X[1,3,2,4];X[3,1,4,2]";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn census_path() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/census12.jsonl")
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn jones_prints_polynomial_line() {
    let out = run(&["jones", "--pd", LEFT_TREFOIL]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("-t^-4 + t^-3 + t^-1"));
    let detail: serde_json::Value = serde_json::from_str(&text[text.find('{').unwrap()..]).unwrap();
    assert_eq!(detail["min_deg"], -4);
    assert_eq!(detail["max_deg"], -1);
    assert_eq!(detail["writhe"], -3);
    assert_eq!(detail["components"], 1);
}

#[test]
fn jones_reads_pd_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "{RIGHT_TREFOIL}").unwrap();
    let out = run(&["jones", "--input", file.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next(), Some("t + t^3 - t^4"));
}

#[test]
fn jones_output_is_thread_independent() {
    let one = run(&["jones", "--pd", RIGHT_TREFOIL, "--threads", "1"]);
    let four = run(&["jones", "--pd", RIGHT_TREFOIL, "--threads", "4"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn jones_cap_exceeded_exits_one() {
    let out = run(&["jones", "--pd", RIGHT_TREFOIL, "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--cap"), "{}", stderr(&out));
}

#[test]
fn states_reports_structure() {
    let out = run(&["states", "--pd", HOPF]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["a_circles"], 2);
    assert_eq!(doc["b_circles"], 2);
    assert_eq!(doc["seifert_circles"], 2);
    assert_eq!(doc["classification"], "Balanced");
    assert_eq!(doc["reduced_graph"]["is_tree"], true);
    assert_eq!(
        doc["reduced_graph"]["edges"],
        serde_json::json!([[0, 1, 2]])
    );
}

#[test]
fn states_classification_is_null_for_nonpositive() {
    let out = run(&["states", "--pd", LEFT_TREFOIL]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["classification"], serde_json::Value::Null);
}

#[test]
fn classify_infers_fiberedness_for_positive_diagrams() {
    let out = run(&["classify", "--pd", RIGHT_TREFOIL]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["fibered"], true);
    assert_eq!(doc["verdict"], "Inconclusive");
    assert!(doc["fibered_source"].as_str().unwrap().contains("inferred"));
}

#[test]
fn classify_requires_fibered_flag_for_nonpositive() {
    let out = run(&["classify", "--pd", LEFT_TREFOIL]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--fibered"), "{}", stderr(&out));
    let out = run(&["classify", "--pd", LEFT_TREFOIL, "--fibered", "true"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["fibered_source"], "flag");
}

#[test]
fn census_text_mode_matches_report() {
    let out = run(&["census", "--input", &census_path()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(
        lines[0],
        "12n148: min deg 3, max deg 13, 4*min deg 12 -> NOT POSITIVE (13 > 12)"
    );
    assert!(lines[7].starts_with("summary: 7 records, 7 not positive"));
}

#[test]
fn census_json_mode_and_determinism() {
    let a = run(&["census", "--input", &census_path(), "--format", "json"]);
    let b = run(&["census", "--input", &census_path(), "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "census output must be byte-identical");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 7);
    assert_eq!(doc["records"][0]["matched_form"], "mirrored");
    assert_eq!(doc["records"][0]["min_deg"], 3);
    assert_eq!(doc["records"][0]["max_deg"], 13);
    assert_eq!(doc["summary"]["mismatches"], 0);
}

#[test]
fn census_mismatch_exits_one() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        r#"{{"name": "bad", "pd": "{RIGHT_TREFOIL}", "fibered": true, "expected_mirror_jones": "t + t^2"}}"#
    )
    .unwrap();
    let out = run(&["census", "--input", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"), "{}", stdout(&out));
}

#[test]
fn census_load_error_names_the_line() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        r#"{{"name": "ok", "pd": "{HOPF}", "fibered": false}}"#
    )
    .unwrap();
    writeln!(file, "{{broken").unwrap();
    let out = run(&["census", "--input", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn generate_is_seed_deterministic() {
    let a = run(&["generate", "--seed", "11", "--count", "3"]);
    let b = run(&["generate", "--seed", "11", "--count", "3"]);
    let c = run(&["generate", "--seed", "12", "--count", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "PD line plus manifest line per diagram");
    for pair in lines.chunks(2) {
        assert!(pair[0].starts_with("X["));
        let manifest: serde_json::Value = serde_json::from_str(pair[1]).unwrap();
        assert_eq!(manifest["classification"], "Balanced");
        let k = manifest["k"].as_u64().unwrap();
        assert_eq!(manifest["crossings"], serde_json::json!(2 * (k - 1)));
    }
}

#[test]
fn verify_suites_report_success() {
    for suite in ["balanced", "prop6", "stoimenow", "mirror"] {
        let out = run(&["verify", "--suite", suite, "--count", "6", "--seed", "7"]);
        assert!(out.status.success(), "{suite}: {}", stderr(&out));
        assert!(
            stdout(&out).contains("all invariants held"),
            "{}",
            stdout(&out)
        );
    }
    let out = run(&[
        "verify", "--suite", "burdened", "--count", "5", "--seed", "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("burdened: checked 5 diagrams"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["jones"]).status.code(),
        Some(2),
        "missing --pd/--input"
    );
    assert_eq!(
        run(&["jones", "--pd", HOPF, "--input", "x"]).status.code(),
        Some(2),
        "conflicting inputs"
    );
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_one() {
    let out = run(&["jones", "--pd", "X[1,2,3]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error:"), "{}", stderr(&out));
}
