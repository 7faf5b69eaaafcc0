//! Run reports: deterministic JSON records of a command's verdicts and
//! witnesses. Byte-stable for fixed inputs and seed; wall-clock timing is
//! included only when explicitly requested.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub seed: u64,
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> RunReport {
        RunReport {
            command,
            inputs_digest: String::new(),
            seed,
            verdict: String::new(),
            details: Vec::new(),
            witnesses: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn digest_inputs(&mut self, inputs: &[Vec<u8>]) {
        let mut h = Sha256::new();
        for i in inputs {
            h.update((i.len() as u64).to_le_bytes());
            h.update(i);
        }
        self.inputs_digest = format!("{:x}", h.finalize());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
