//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Outputs, checks and (optionally) timings of one invocation. Without
/// timings the serialized report depends only on the invocation and inputs.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_sha256: String,
    pub outputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs: &[&[u8]], timing: bool) -> Self {
        let mut h = Sha256::new();
        for part in inputs {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part);
        }
        let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        RunReport {
            command,
            inputs_sha256: digest,
            outputs: BTreeMap::new(),
            checks: Vec::new(),
            passed: true,
            timing_ms: timing.then(BTreeMap::new),
        }
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<Value>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness,
        });
    }

    /// Runs `f`, recording its wall time under `label` when timing is on.
    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        let ms = start.elapsed().as_millis();
        if let Some(t) = &mut self.timing_ms {
            *t.entry(label.to_string()).or_default() += ms;
        }
        out
    }

    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.passed = self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
