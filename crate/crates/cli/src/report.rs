//! Machine-readable run report. All scalar values are exact fraction
//! strings; timings live in their own top-level table so byte-level
//! comparisons can strip them.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub jobs: Vec<JobResult>,
    pub timing_ms: BTreeMap<String, u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JobResult {
    pub name: String,
    pub status: Status,
    pub details: serde_json::Value,
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl JobResult {
    pub fn pass(name: &str, details: serde_json::Value) -> Self {
        JobResult { name: name.into(), status: Status::Pass, details, witness: None }
    }

    pub fn fail(name: &str, details: serde_json::Value, witness: serde_json::Value) -> Self {
        JobResult {
            name: name.into(),
            status: Status::Fail,
            details,
            witness: Some(witness),
        }
    }
}
