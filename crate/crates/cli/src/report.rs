use std::collections::BTreeMap;
use std::fmt::Write as _;

use rowfin_core::constructions::check::{Check, Outcome};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BoundExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub got: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        let mut r = CheckRecord { name: c.name.clone(), verdict: "pass", location: None, expected: None, got: None, note: None };
        match &c.outcome {
            Outcome::Pass => {}
            Outcome::Fail(d) => {
                r.verdict = "fail";
                r.location = Some(d.location.clone());
                r.expected = Some(d.expected.clone());
                r.got = Some(d.got.clone());
            }
            Outcome::BoundExceeded(m) => {
                r.verdict = "bound_exceeded";
                r.note = Some(m.clone());
            }
        }
        r
    }
}

/// Structured result of one subcommand. Contains nothing run-dependent, so
/// equal configurations serialize to equal bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub config: BTreeMap<String, Value>,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub summary: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(subcommand: &str, config: BTreeMap<String, Value>) -> Self {
        Report {
            subcommand: subcommand.to_string(),
            config,
            status: Status::Pass,
            checks: Vec::new(),
            summary: BTreeMap::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn extend(&mut self, checks: &[Check]) {
        self.checks.extend(checks.iter().map(CheckRecord::from));
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(CheckRecord::from(&check));
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn witness(&mut self, key: &str, value: impl Into<Value>) {
        self.witnesses.insert(key.to_string(), value.into());
    }

    /// Fail beats bound-exceeded beats pass.
    pub fn finalize(mut self) -> Self {
        let verdicts: Vec<&str> = self.checks.iter().map(|c| c.verdict).collect();
        self.status = if verdicts.contains(&"fail") {
            Status::Fail
        } else if verdicts.contains(&"bound_exceeded") {
            Status::BoundExceeded
        } else {
            Status::Pass
        };
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let _ = writeln!(out, "rowfin {} [{}]", self.subcommand, cfg.join(" "));
        for c in &self.checks {
            let _ = match c.verdict {
                "pass" => writeln!(out, "  pass  {}", c.name),
                "fail" => writeln!(
                    out,
                    "  FAIL  {} at {}: expected {}, got {}",
                    c.name,
                    c.location.as_deref().unwrap_or("?"),
                    c.expected.as_deref().unwrap_or("?"),
                    c.got.as_deref().unwrap_or("?")
                ),
                _ => writeln!(out, "  bound {} ({})", c.name, c.note.as_deref().unwrap_or("")),
            };
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "  {k}: {}", plain(v));
        }
        let passed = self.checks.iter().filter(|c| c.verdict == "pass").count();
        let _ = write!(out, "status: {} ({passed}/{} checks passed)", status_word(self.status), self.checks.len());
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::BoundExceeded => "bound exceeded",
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
