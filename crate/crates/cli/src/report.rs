//! The structured report every command produces, and its text rendering.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    InputError,
    SoundnessViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::SoundnessViolation => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub seed: u64,
    pub tolerance: f64,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64, tolerance: f64) -> Self {
        Report {
            tool: "halfflat",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            tolerance,
            results: Map::new(),
            checks: Vec::new(),
            status: Status::Pass,
            error: None,
            timing_ms: 0.0,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Derives the status from the checks unless an error was recorded.
    pub fn finish(&mut self) {
        if self.status == Status::Pass && self.checks.iter().any(|c| !c.passed) {
            self.status = Status::Fail;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable form; omits the timing so output is reproducible.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.results {
            render(&mut out, k, v, 0);
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out += &format!("{mark}  {}\n", c.name);
            } else {
                out += &format!("{mark}  {} ({})\n", c.name, c.detail);
            }
        }
        if let Some(e) = &self.error {
            out += &format!("error: {e}\n");
        }
        let status = serde_json::to_value(self.status).unwrap();
        out += &format!("status: {}\n", status.as_str().unwrap());
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        *out += &format!("{pad}{key}: {s}\n");
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            *out += &format!("{pad}{key}: [{}]\n", parts.join(", "));
        }
        Value::Array(items) => {
            *out += &format!("{pad}{key}:\n");
            for (i, item) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Object(map) => {
            *out += &format!("{pad}{key}:\n");
            for (k, v) in map {
                render(out, k, v, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new(vec![], 0, 1e-9);
        r.check("a", true, "");
        r.finish();
        assert_eq!(r.status, Status::Pass);
        r.check("b", false, "why");
        r.finish();
        assert_eq!(r.status.exit_code(), 1);
        assert!(r.to_text().contains("FAIL  b (why)"));
    }

    #[test]
    fn nested_rendering() {
        let mut r = Report::new(vec![], 0, 1e-9);
        r.set("h", serde_json::json!([0, 0, 2]));
        r.set("metric", serde_json::json!([["1", "0"], ["0", "1"]]));
        let text = r.to_text();
        assert!(text.starts_with("h: [0, 0, 2]\nmetric:\n  [0]: [1, 0]\n"));
    }
}
