//! Report containers shared by the verifiers, the sweep harness and the CLI.

use std::collections::BTreeMap;
use std::time::Duration;

use crate::congruence::{CongruenceReport, Verdict};

/// Verdict record of one identity batch (seeded-point or symbolic check).
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub statement: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Mismatch description on FAIL, reason on INAPPLICABLE.
    pub detail: Option<String>,
    pub wall_time: Duration,
}

impl IdentityReport {
    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// One sweep case result: a congruence report or an identity verdict.
#[derive(Clone, Debug)]
pub enum CaseReport {
    Congruence(CongruenceReport),
    Identity(IdentityReport),
}

impl CaseReport {
    pub fn statement(&self) -> &str {
        match self {
            CaseReport::Congruence(r) => &r.statement,
            CaseReport::Identity(r) => &r.statement,
        }
    }

    pub fn params(&self) -> &BTreeMap<String, String> {
        match self {
            CaseReport::Congruence(r) => &r.params,
            CaseReport::Identity(r) => &r.params,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            CaseReport::Congruence(r) => r.verdict,
            CaseReport::Identity(r) => r.verdict,
        }
    }

    pub fn wall_time(&self) -> Duration {
        match self {
            CaseReport::Congruence(r) => r.wall_time,
            CaseReport::Identity(r) => r.wall_time,
        }
    }

    /// Lexicographic case key: statement plus the sorted parameter map.
    pub fn key(&self) -> String {
        let params = self
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!("{} {}", self.statement(), params)
    }
}

/// Deterministically ordered result set of one sweep.
#[derive(Clone, Debug, Default)]
pub struct ReportSet {
    pub config_echo: String,
    pub reports: Vec<CaseReport>,
    pub total_wall: Duration,
}

impl ReportSet {
    /// Verdict counts keyed by verdict label.
    pub fn summary(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::new();
        for report in &self.reports {
            *counts.entry(report.verdict().as_str()).or_insert(0) += 1;
        }
        counts
    }

    pub fn any_fail(&self) -> bool {
        self.reports
            .iter()
            .any(|r| r.verdict() == Verdict::Fail)
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }
}
