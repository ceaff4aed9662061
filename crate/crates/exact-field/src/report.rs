//! Verification reports shared by the checking suites.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

/// A failed check with its location and a counterexample description.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub check: String,
    pub context: Map<String, Value>,
    pub counterexample: String,
}

/// Pass/fail tallies per named check plus every failure.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub suite: String,
    tallies: BTreeMap<String, (usize, usize)>,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), ..Default::default() }
    }

    /// Records one check. The context and counterexample are only built on failure.
    pub fn record(
        &mut self,
        check: &str,
        ok: bool,
        context: impl FnOnce() -> Value,
        counterexample: impl FnOnce() -> String,
    ) -> bool {
        let slot = self.tallies.entry(check.to_string()).or_insert((0, 0));
        if ok {
            slot.0 += 1;
        } else {
            slot.1 += 1;
            let context = match context() {
                Value::Object(m) => m,
                Value::Null => Map::new(),
                other => {
                    let mut m = Map::new();
                    m.insert("at".into(), other);
                    m
                }
            };
            self.failures.push(Failure { check: check.to_string(), context, counterexample: counterexample() });
        }
        ok
    }

    /// Records a passing or failing check without context.
    pub fn tally(&mut self, check: &str, ok: bool, counterexample: impl FnOnce() -> String) -> bool {
        self.record(check, ok, || Value::Null, counterexample)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(&mut self, other: Report) {
        for (k, (p, f)) in other.tallies {
            let slot = self.tallies.entry(k).or_insert((0, 0));
            slot.0 += p;
            slot.1 += f;
        }
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// `(passed, failed)` for a named check.
    pub fn count(&self, check: &str) -> (usize, usize) {
        self.tallies.get(check).copied().unwrap_or((0, 0))
    }

    pub fn total_checks(&self) -> usize {
        self.tallies.values().map(|(p, f)| p + f).sum()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .tallies
            .iter()
            .map(|(name, (p, f))| json!({ "check": name, "passed": p, "failed": f }))
            .collect();
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|fl| {
                let mut m = Map::new();
                m.insert("check".into(), json!(fl.check));
                for (k, v) in &fl.context {
                    m.insert(k.clone(), v.clone());
                }
                m.insert("status".into(), json!("fail"));
                m.insert("counterexample".into(), json!(fl.counterexample));
                Value::Object(m)
            })
            .collect();
        let mut out = json!({
            "suite": self.suite,
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": checks,
            "failures": failures,
        });
        if !self.notes.is_empty() {
            out["notes"] = json!(self.notes);
        }
        out
    }
}
