//! Behaviour of the `dendcox` binary: report schema, exit codes and the
//! agreement of text and JSON output.

use std::process::Command;

use serde::Deserialize;
use serde_json::{Map, Value};

#[derive(Debug, Deserialize, serde::Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Report {
    command: String,
    parameters: Map<String, Value>,
    status: String,
    payload: Value,
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dendcox"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Structural check against the documented schema: required keys, no extra
/// keys, enumerated command and status values, object-typed fields.
fn check_schema(v: &Value) {
    let schema = schema();
    let obj = v.as_object().expect("report is an object");
    let props = schema["properties"].as_object().unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    for key in obj.keys() {
        assert!(props.contains_key(key), "unexpected key {key}");
    }
    for key in ["command", "status"] {
        let allowed = props[key]["enum"].as_array().unwrap();
        assert!(allowed.contains(&obj[key]), "{key} = {} not in schema", obj[key]);
    }
    assert!(obj["parameters"].is_object());
    assert!(obj["payload"].is_object());
}

fn json_report(args: &[&str]) -> (i32, Report, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, _) = run(&full);
    let value: Value = serde_json::from_str(out.trim()).expect("valid JSON");
    check_schema(&value);
    let report: Report = serde_json::from_value(value.clone()).unwrap();
    // round trip: typed → JSON text → value is lossless
    let again: Value = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, value);
    (code, report, value)
}

#[test]
fn theorem_report_for_three_leaves() {
    let (code, r, _) = json_report(&["verify", "theorem", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.status, "PASS");
    assert_eq!(r.command, "verify theorem");
    assert_eq!(r.payload["cases"][0]["polynomial"], serde_json::json!([1, 1, 1]));
}

#[test]
fn every_command_matches_schema() {
    let cases: &[&[&str]] = &[
        &["seq", "catalan", "--upto", "40"],
        &["tamari", "--leaves", "5"],
        &["charpoly", "--leaves", "5", "--matrix", "theta", "--method", "both"],
        &["charpoly", "--leaves", "4", "--matrix", "tau", "--method", "direct"],
        &["verify", "conjecture", "--upto", "4"],
        &["verify", "crux", "--upto", "16"],
        &["verify", "forms", "--upto", "8"],
        &["symcheck", "--degree", "6"],
        &["taylor", "--order", "12"],
        &["series", "--order", "12"],
        &["characters", "--upto", "5"],
    ];
    for args in cases {
        let (code, r, _) = json_report(args);
        assert_eq!(code, 0, "{args:?}");
        assert!(r.status == "PASS" || r.status == "CONJECTURE-PASS", "{args:?}: {}", r.status);
    }
}

#[test]
fn big_integers_are_exact_json_numbers() {
    // c_40 = 2622127042276492108820 exceeds u64
    let (_, _, v) = json_report(&["seq", "catalan", "--upto", "40"]);
    let last = v["payload"]["values"].as_array().unwrap().last().unwrap();
    assert_eq!(last.to_string(), "2622127042276492108820");
}

#[test]
fn text_and_json_agree_on_status() {
    let cases: &[&[&str]] = &[
        &["verify", "theorem", "--upto", "5"],
        &["verify", "conjecture", "--n", "6"],
        &["taylor", "--order", "10"],
        &["verify", "crux", "--upto", "10"],
    ];
    for args in cases {
        let (text_code, text, _) = run(args);
        let (json_code, r, _) = json_report(args);
        assert_eq!(text_code, json_code);
        let text_fails = text.lines().any(|l| l.starts_with("FAIL"));
        assert_eq!(text_fails, r.status == "FAIL", "{args:?}");
        let conj = text.lines().any(|l| l.starts_with("CONJECTURE-"));
        assert_eq!(conj, r.status.starts_with("CONJECTURE-"), "{args:?}");
    }
}

#[test]
fn lattice_export_format() {
    let (code, out, _) = run(&["tamari", "--leaves", "4", "--export", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["leaves", "elements", "covers"]);
    assert_eq!(v["leaves"], 4);
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
    assert_eq!(v["elements"][0], "((()))");
    assert_eq!(v["covers"].as_array().unwrap().len(), 5);
}

#[test]
fn resource_and_usage_errors_exit_two() {
    // 4862 trees exceed the default dimension cap
    let (code, _, err) = run(&["verify", "theorem", "--n", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("ERROR"));
    let (code, _, _) = run(&["tamari", "--leaves", "6", "--max-dim", "10"]);
    assert_eq!(code, 2);
    let (code, r, _) = json_report(&["charpoly", "--leaves", "5", "--matrix", "tau", "--method", "direct", "--max-dim-direct", "4"]);
    assert_eq!(code, 2);
    assert_eq!(r.status, "ERROR");
    let (code, _, _) = run(&["verify", "theorem"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["seq", "nope", "--upto", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn sequential_flag_gives_identical_output() {
    let (_, par, _) = run(&["charpoly", "--leaves", "6", "--matrix", "tau", "--method", "traces", "--format", "json"]);
    let (_, seq, _) = run(&["charpoly", "--leaves", "6", "--matrix", "tau", "--method", "traces", "--format", "json", "--sequential"]);
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s.trim()).unwrap();
        for r in v["payload"]["results"].as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("millis");
        }
        v
    };
    assert_eq!(strip(&par), strip(&seq));
}
