use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const WORKSPACE: &str = r#"{
  "algebras": {
    "k": "ground",
    "kxk": "product [k, k]",
    "M2": "matrix_algebra 2",
    "T2": "upper_triangular 2"
  },
  "categories": {
    "ST": "sigma_algebra T2",
    "SM": "sigma_algebra M2",
    "D": "discrete [a, b]"
  },
  "freyd_objects": {
    "Q": {"category": "ST", "r1": ["*"], "r0": ["*"], "blocks": [["0", "0", "1"]]},
    "P": {"category": "SM", "r1": [], "r0": ["*"], "blocks": []},
    "R": {"category": "ST", "r1": ["*"], "r0": ["*", "*"], "blocks": [["1", "0", "0"], ["0", "1", "0"]]}
  }
}"#;

fn fincat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fincat")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn compute(ws: &str, expr: &str) -> (i32, Value) {
    let out = fincat(&["compute", ws, expr, "--format", "json"]);
    let code = out.status.code().unwrap();
    (code, if code == 2 { Value::Null } else { json_of(&out) })
}

#[test]
fn simples_of_a_tensor_product() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write(dir.path(), "ws.json", WORKSPACE);
    let (code, report) = compute(&ws, "simples(tensor(kxk, M2))");
    assert_eq!(code, 0);
    assert_eq!(report["result"]["count"], 2);
    assert_eq!(report["result"]["dims"], serde_json::json!([2, 2]));
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn kernel_of_an_identity_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write(dir.path(), "ws.json", WORKSPACE);
    for name in ["Q", "P", "R"] {
        let (code, report) = compute(&ws, &format!("kernel(id({name}))"));
        assert_eq!(code, 0, "{name}");
        assert_eq!(report["result"]["is_zero"], true, "{name}");
    }
}

#[test]
fn eval_of_box_has_product_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write(dir.path(), "ws.json", WORKSPACE);
    for (x, y) in [("Q", "P"), ("R", "P"), ("R", "Q")] {
        let dim = |e: String| compute(&ws, &e).1["result"]["dim"].as_u64().unwrap();
        let (dx, dy) = (dim(format!("eval({x})")), dim(format!("eval({y})")));
        assert_eq!(dim(format!("eval(box({x}, {y}))")), dx * dy, "{x} {y}");
    }
}

#[test]
fn restriction_suite_passes() {
    let out = fincat(&["verify", "restriction-exact", "--seed", "1", "--samples", "50", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json_of(&out);
    assert_eq!(report["samples"], 50);
    assert_eq!(report["checks"].as_array().unwrap().len(), 50);
}

#[test]
fn semisimple_tensor_counts_from_a_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write(
        dir.path(),
        "ss.json",
        r#"{"algebras": {"kxM2": "product [ground, matrix_algebra 2]", "M3": "matrix_algebra 3"}}"#,
    );
    let out = fincat(&["verify", "semisimple-tensor", &ws, "--samples", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json_of(&out)["checks"][0]["witness"];
    assert_eq!(w["counts"], serde_json::json!([2, 1, 2]));
    assert_eq!(w["dims"], serde_json::json!([3, 6]));
}

#[test]
fn degenerate_and_unknown_suites_exit_2() {
    assert_eq!(fincat(&["verify", "freyd-kernel", "--samples", "0"]).status.code(), Some(2));
    let out = fincat(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-suite"));
    let dir = tempfile::tempdir().unwrap();
    let ws = write(dir.path(), "empty.json", "{}");
    assert_eq!(fincat(&["verify", "discrete-decompose", &ws]).status.code(), Some(2));
}

#[test]
fn mixed_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let explicit = r#"{"field": "gf:5", "algebras": {"A": {"field": "Q", "dim": 1, "basis_names": ["1"], "mult": [[["1"]]], "unit": ["1"]}}}"#;
    let ws = write(dir.path(), "mixed.json", explicit);
    let out = fincat(&["compute", &ws, "A"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mixed fields"));
    let ws = write(dir.path(), "q.json", r#"{"field": "Q", "algebras": {"k": "ground"}}"#);
    assert_eq!(fincat(&["compute", &ws, "k", "--field", "gf:7"]).status.code(), Some(2));
    assert_eq!(fincat(&["compute", &ws, "k", "--field", "Q"]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_columns() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write(dir.path(), "ws.json", WORKSPACE);
    let out = fincat(&["compute", &ws, "kernel(id(Q)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 13"));
    let out = fincat(&["compute", &ws, "kernel(nope)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 8"));
}

#[test]
fn precondition_failures_exit_1_with_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write(dir.path(), "ws.json", WORKSPACE);
    let (code, report) = compute(&ws, "simples(T2)");
    assert_eq!(code, 1);
    assert_eq!(report["checks"][0]["name"], "evaluate");
    assert_eq!(report["checks"][0]["passed"], false);
}

#[test]
fn reports_are_byte_identical_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let body = |name: &str| {
        let path = dir.path().join(name);
        let out = fincat(&["verify", "box-eval-square", "--seed", "9", "--samples", "12", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        let mut command = v["command"].as_str().unwrap().to_string();
        command = command.replace(name, "OUT");
        v["command"] = Value::String(command);
        serde_json::to_string_pretty(&v).unwrap()
    };
    assert_eq!(body("a.json"), body("b.json"));
}
