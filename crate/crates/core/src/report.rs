//! Versioned machine-readable reports and their text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "transring-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Witnesses, counterexamples or the full module report.
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub trace: Value,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckOutcome {
        CheckOutcome { name: name.into(), passed, detail: detail.into(), trace: Value::Null }
    }

    pub fn with_trace<T: Serialize>(mut self, trace: &T) -> CheckOutcome {
        self.trace = serde_json::to_value(trace).expect("reports serialize");
        self
    }

    /// A check that could not run; the error is the detail.
    pub fn error(name: impl Into<String>, e: impl std::fmt::Display) -> CheckOutcome {
        CheckOutcome::new(name, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Section {
        Section { name: name.into(), checks: vec![], elapsed_ms: None }
    }

    pub fn push(&mut self, c: CheckOutcome) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new<C: Serialize>(command: &str, config: &C, seed: u64) -> Report {
        Report {
            schema: SCHEMA.into(),
            tool: "transring".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config: serde_json::to_value(config).expect("config serializes"),
            seed,
            sections: vec![],
            verdict: "pass".into(),
            wall_time_ms: None,
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
        self.verdict = if self.passed() { "pass" } else { "fail" }.into();
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn failed_sections(&self) -> Vec<&str> {
        self.sections.iter().filter(|s| !s.passed()).map(|s| s.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        render_text(&serde_json::to_value(self).expect("reports serialize"))
    }
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Renders a serialized report. Works from the JSON alone so the text can
/// never disagree with it.
pub fn render_text(v: &Value) -> String {
    let s = |v: &Value, k: &str| v[k].as_str().unwrap_or("").to_string();
    let mut out = String::new();
    let _ = writeln!(out, "{} {} [{}] {} seed={}", s(v, "tool"), s(v, "version"), s(v, "schema"), s(v, "command"), v["seed"]);
    for sec in v["sections"].as_array().into_iter().flatten() {
        let checks = sec["checks"].as_array().cloned().unwrap_or_default();
        let ok = checks.iter().all(|c| c["passed"].as_bool() == Some(true));
        let _ = write!(out, "{} {}", mark(ok), s(sec, "name"));
        if let Some(ms) = sec["elapsed_ms"].as_u64() {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        for c in &checks {
            let passed = c["passed"].as_bool() == Some(true);
            let _ = writeln!(out, "    {} {}: {}", mark(passed), s(c, "name"), s(c, "detail"));
        }
    }
    let _ = write!(out, "verdict: {}", s(v, "verdict"));
    if let Some(ms) = v["wall_time_ms"].as_u64() {
        let _ = write!(out, " ({ms} ms)");
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_follows_json() {
        let mut r = Report::new("verify", &serde_json::json!({"bound": 3}), 7);
        let mut s = Section::new("axioms");
        s.push(CheckOutcome::new("pairs", true, "256 pairs"));
        s.push(CheckOutcome::new("exponents", false, "(2, 1)"));
        r.push(s);
        assert_eq!(r.verdict, "fail");
        let text = r.to_text();
        assert!(text.contains("FAIL axioms\n    PASS pairs: 256 pairs\n    FAIL exponents: (2, 1)\n"));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
