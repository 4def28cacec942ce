//! Uniform pass/fail reports with witnesses, used for JSON output.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Concrete counterexample; always present when `passed` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
            detail: None,
        }
    }

    /// Pass when `violation` is `None`, otherwise fail with it as witness.
    pub fn from_violation<W: Serialize>(name: impl Into<String>, violation: Option<W>) -> Self {
        match violation {
            None => Check::pass(name),
            Some(w) => Check::fail(name, serde_json::to_value(w).expect("witness serializes")),
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.get(name).map(|c| c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}
