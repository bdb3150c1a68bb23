//! Pass/fail records shared by all verifiers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Re-checkable data for failures (words, polynomials, offsets).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: true, detail: detail.into(), witness: BTreeMap::new() }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: false, detail: detail.into(), witness: BTreeMap::new() }
    }

    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into(), witness: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Check {
        self.witness.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), ..Report::default() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn label(&mut self, text: impl Into<String>) {
        let t = text.into();
        if !self.labels.contains(&t) {
            self.labels.push(t);
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
        for l in other.labels {
            self.label(l);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self) -> (usize, usize) {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        (ok, self.checks.len() - ok)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let (ok, bad) = self.count();
        let _ = write!(s, "suite {}: {ok} passed, {bad} failed", self.suite);
        if !self.labels.is_empty() {
            let _ = write!(s, " [{}]", self.labels.join("; "));
        }
        s.push('\n');
        for c in &self.checks {
            let _ = writeln!(s, "  {} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            for (k, v) in &c.witness {
                let _ = writeln!(s, "      {k} = {v}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("suite,check,passed,detail,witness\n");
        for c in &self.checks {
            let w: Vec<String> = c.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                self.suite,
                csv_field(&c.name),
                c.passed,
                csv_field(&c.detail),
                csv_field(&w.join(";"))
            );
        }
        s
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
