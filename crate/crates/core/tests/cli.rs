use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn transring(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transring")).current_dir(dir).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn exhaustive_verify_reports_256_pairs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "f2poly.json", r#"{"kind":"poly","field":"F2"}"#);
    let out = transring(dir.path(), &["verify", "--structure", "f2poly.json", "--mode", "exhaustive", "--bound", "3", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "r.json");
    assert_eq!(r["schema"], "transring-report/1");
    assert_eq!(r["seed"], 2024);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["sections"][0]["checks"][0]["trace"]["pairs_tested"], 256);
    // the text on stdout is the rendering of the JSON
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, transring::report::render_text(&r));
}

#[test]
fn bijection_on_f2f2f3() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "f2f2f3.json", r#"{"kind":"product_of_fields","primes":[2,2,3]}"#);
    let out = transring(dir.path(), &["filters", "--structure", "f2f2f3.json", "--check", "bijection", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let c = &report(dir.path(), "r.json")["sections"][0]["checks"][1];
    assert_eq!(c["detail"], "3↔3");
}

#[test]
fn nth_root_precondition_fails_on_f3() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "f3.json", r#"{"kind":"product_of_fields","primes":[3]}"#);
    let out = transring(dir.path(), &["filters", "--structure", "f3.json", "--check", "nth-root:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("(2) has no 2-th root"));
}

#[test]
fn malformed_json_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.json", "{\"kind\": \"poly\",\n  \"field\": }");
    let out = transring(dir.path(), &["verify", "--structure", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2, column 12"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(transring(dir.path(), &["suite", ""]).status.code(), Some(2));
    assert_eq!(transring(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(transring(dir.path(), &["verify", "--structure", "missing.json"]).status.code(), Some(2));
    write(dir.path(), "f2poly.json", r#"{"kind":"poly","field":"F2"}"#);
    assert_eq!(transring(dir.path(), &["verify", "--structure", "f2poly.json", "--bound", "0"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "seq.json", r#"{"kind":"seq","ideal":"density_zero"}"#);
    for name in ["a.json", "b.json"] {
        let out = transring(dir.path(), &["verify", "--structure", "seq.json", "--mode", "sample", "--pairs", "100", "--seed", "5", "--out", name]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
}

#[test]
fn fault_fails_exactly_one_section() {
    let dir = tempfile::tempdir().unwrap();
    let out = transring(dir.path(), &["suite", "--fault", "drop-root", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path(), "r.json");
    let failing: Vec<&Value> = r["sections"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false))
        .collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0]["name"].as_str().unwrap().starts_with("1 "));
}

#[test]
fn omega_with_extension() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", r#"{"kind":"product_of_fields","primes":[2,3]}"#);
    write(dir.path(), "sigma.json", "[0, 1]");
    write(dir.path(), "phi.json", "[0, 1, 2, 3, 4, 5]");
    let out = transring(dir.path(), &["omega", "--structure", "a.json", "--extend", "sigma.json", "phi.json", "a.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn seq_and_localize_commands() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "q.json", r#"{"kind":"poly","field":"Q"}"#);
    assert_eq!(transring(dir.path(), &["localize", "--structure", "q.json", "--pairs", "50"]).status.code(), Some(0));
    write(dir.path(), "x.json", r#"{"blocks":[{"set":{"mod":2,"res":[0],"plus":[],"minus":[],"sparse":[]},"value":"1/2"},{"set":{"mod":2,"res":[1],"plus":[],"minus":[],"sparse":[]},"value":"3"}]}"#);
    let out = transring(dir.path(), &["seq", "--ideal", "finite", "--sequence", "x.json", "--pairs", "50", "--units", "20"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("I_f limit none, I_d limit none"), "{text}");
}
