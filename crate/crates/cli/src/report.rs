//! The report document printed by every command.

use ortho_core::{Check, CheckReport};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    /// File path, or the flag an inline value was passed with.
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub stage: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
    pub passed: bool,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Collects inputs, results and timings while a command runs.
#[derive(Debug, Default)]
pub struct Session {
    inputs: Vec<InputDigest>,
    timings: Vec<Timing>,
    pub seed: Option<u64>,
    pub checks: CheckReport,
    pub results: Map<String, Value>,
}

impl Session {
    pub fn file(&mut self, path: &str) -> crate::error::Result<String> {
        let bytes = std::fs::read(path).map_err(|source| crate::error::CliError::Read { path: path.to_string(), source })?;
        self.inputs.push(InputDigest { name: path.to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|e| crate::error::CliError::Usage(format!("{path}: not UTF-8: {e}")))
    }

    pub fn inline(&mut self, flag: &str, value: &str) {
        self.inputs.push(InputDigest { name: flag.to_string(), sha256: sha256_hex(value.as_bytes()) });
    }

    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing { stage: stage.to_string(), millis: start.elapsed().as_secs_f64() * 1e3 });
        out
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn finish(self, command: Vec<String>, timings: bool) -> ReportDocument {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: "ortho", version: env!("CARGO_PKG_VERSION") },
            command,
            inputs: self.inputs,
            seed: self.seed,
            passed: self.checks.all_passed(),
            checks: self.checks.checks,
            results: self.results,
            timings: timings.then_some(self.timings),
        }
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ortho {}", self.command.join(" "));
        for i in &self.inputs {
            let _ = writeln!(out, "  input {} sha256:{}", i.name, i.sha256);
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "  seed {seed}");
        }
        for c in &self.checks {
            let _ = write!(out, "{:<6} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if let Some(w) = &c.witness {
                let _ = write!(out, "  witness {w}");
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, "  ({d})");
            }
            out.push('\n');
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(ts) = &self.timings {
            for t in ts {
                let _ = writeln!(out, "time {}: {:.3} ms", t.stage, t.millis);
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "result: {} ({passed}/{} checks passed)",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        out
    }
}
