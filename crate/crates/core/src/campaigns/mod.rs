//! Statement-level verifiers binding the q-series, congruence and transform
//! machinery to each numbered result, plus the grid-sweep harness.

mod config;
mod reports;
mod sweep;
mod verifiers;

pub use config::{CampaignConfig, Case, CaseKind, StatementConfig, StatementId};
pub use reports::{CaseReport, IdentityReport, ReportSet};
pub use sweep::run_sweep;
pub use verifiers::{
    run_andrews_batch, run_eq_multi, run_gasper_batch, run_ms0_batch, run_watson_batch,
    verify_conjecture1, verify_conjecture2, verify_eq_3rd_noa, verify_gsdiff, verify_gw2,
    verify_lemma_31, verify_lemma_31_rational, verify_lemma_32, verify_lemma_32_rational,
    verify_lemma_mod_square, verify_sec5_conjecture, verify_sec5_theorem, verify_theorem1,
    verify_theorem1_mod_power, verify_theorem2,
};

use crate::error::{Error, Result};

/// Truncation-point choice: the statement's own bound or n-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MChoice {
    /// ((d-1)n -+ r)/d for the two-parameter families, (n+1)/2 for the
    /// fifth-power statements.
    Paper,
    NMinus1,
}

impl MChoice {
    pub fn label(&self) -> &'static str {
        match self {
            MChoice::Paper => "paper",
            MChoice::NMinus1 => "n-1",
        }
    }

    pub const BOTH: [MChoice; 2] = [MChoice::Paper, MChoice::NMinus1];
}

impl std::str::FromStr for MChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "half" => Ok(MChoice::Paper),
            "n-1" | "last" | "nminus1" => Ok(MChoice::NMinus1),
            other => Err(Error::ConfigError(format!(
                "unknown truncation choice '{other}' (expected paper | n-1)"
            ))),
        }
    }
}
