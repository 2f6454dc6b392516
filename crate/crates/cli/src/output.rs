//! Machine-readable output records: one JSON line (or CSV row) per case.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qcw_core::campaigns::CaseReport;
use qcw_core::congruence::Verdict;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputRecord {
    pub schema_version: String,
    pub statement: String,
    pub params: BTreeMap<String, String>,
    pub verdict: String,
    /// SHA-256 of the remainder polynomial's canonical text; empty on PASS.
    pub remainder_digest: String,
    pub wall_ms: u64,
}

pub fn digest_text(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    format!("{:x}", hasher.finalize())
}

impl OutputRecord {
    pub fn from_case(report: &CaseReport) -> Self {
        let mut params = report.params().clone();
        let remainder_digest = match report {
            CaseReport::Congruence(r) => {
                if !r.modulus.is_empty() {
                    params.insert("modulus".into(), r.modulus.clone());
                }
                if let Some(reason) = &r.reason {
                    params.insert("reason".into(), reason.clone());
                }
                match (r.verdict, &r.remainder) {
                    (Verdict::Fail, Some(rem)) => digest_text(&rem.canonical_text()),
                    _ => String::new(),
                }
            }
            CaseReport::Identity(r) => {
                if let Some(detail) = &r.detail {
                    params.insert("detail".into(), detail.clone());
                }
                if r.verdict == Verdict::Fail {
                    digest_text(r.detail.as_deref().unwrap_or(""))
                } else {
                    String::new()
                }
            }
        };
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            statement: report.statement().to_string(),
            params,
            verdict: report.verdict().as_str().to_string(),
            remainder_digest,
            wall_ms: report.wall_time().as_millis() as u64,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// CSV row: statement,params,verdict,wall_ms.
    pub fn to_csv_row(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},\"{}\",{},{}",
            self.statement,
            params.replace('"', "\"\""),
            self.verdict,
            self.wall_ms
        )
    }
}

pub const CSV_HEADER: &str = "statement,params,verdict,wall_ms";
