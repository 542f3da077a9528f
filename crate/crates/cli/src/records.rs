//! Machine-readable output records.
//!
//! Every record carries `schemaVersion` and echoes its command. Integers are
//! decimal strings so arbitrary-precision values survive JSON. Records are
//! stable across runs for identical inputs, apart from `elapsedMs`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Result of `test` or `test-deleted`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictRecord {
    pub schema_version: u32,
    pub command: String,
    pub m: String,
    pub n: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
    pub hamiltonian: bool,
    pub failed_condition: Option<String>,
    pub swapped_orientation: bool,
    pub witnesses: BTreeMap<String, String>,
    pub elapsed_ms: f64,
}

/// Result of `build`: each cycle is a closed vertex sequence (the edge back
/// to the first vertex is implied).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BuildRecord {
    pub schema_version: u32,
    pub command: String,
    pub m: String,
    pub n: String,
    pub target: String,
    pub cycles: Vec<Vec<[u64; 2]>>,
    pub elapsed_ms: f64,
}

/// One row of `scan`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRecord {
    pub schema_version: u32,
    pub command: String,
    pub m: String,
    pub n: String,
    pub hamiltonian: bool,
    pub failed_condition: Option<String>,
    pub elapsed_ms: f64,
}

/// Summary of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyRecord {
    pub schema_version: u32,
    pub command: String,
    pub limit: u64,
    pub cap: u64,
    pub instances_checked: u64,
    pub discrepancies: Vec<String>,
    pub all_match: bool,
    pub elapsed_ms: f64,
}
