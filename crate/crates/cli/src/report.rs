//! The verification report document.
//!
//! Field order is fixed by the struct layout. Integers that can exceed 2^53
//! are written as decimal strings. `timing_ms` is empty unless timing was
//! requested, which keeps default reports byte-stable.

use std::collections::BTreeMap;

use pgcensus_core::census::{CensusCounts, SamplingStats};
use pgcensus_core::motivic::IdentityCheck;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Self {
            name: name.to_string(),
            pass: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

impl From<IdentityCheck> for Check {
    fn from(c: IdentityCheck) -> Self {
        Self {
            name: c.name.to_string(),
            lhs: c.lhs,
            rhs: c.rhs,
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "n_G")]
    pub n_g: String,
    #[serde(rename = "n_P6")]
    pub n_p6: String,
    #[serde(rename = "n_P5")]
    pub n_p5: String,
    #[serde(rename = "n_X")]
    pub n_x: String,
    #[serde(rename = "n_Y")]
    pub n_y: String,
    #[serde(rename = "n_H")]
    pub n_h: Option<String>,
    #[serde(rename = "n_tH")]
    pub n_th: String,
    #[serde(rename = "n_tH1")]
    pub n_th1: String,
    #[serde(rename = "n_tH2")]
    pub n_th2: String,
    #[serde(rename = "n_tH11")]
    pub n_th11: String,
    #[serde(rename = "n_tH12")]
    pub n_th12: String,
    pub rank_histogram: BTreeMap<String, String>,
}

impl From<&CensusCounts> for Counts {
    fn from(c: &CensusCounts) -> Self {
        Self {
            n_g: c.n_g.to_string(),
            n_p6: c.n_p6.to_string(),
            n_p5: c.n_p5.to_string(),
            n_x: c.n_x.to_string(),
            n_y: c.n_y.to_string(),
            n_h: c.n_h.map(|n| n.to_string()),
            n_th: c.tilde.n_th.to_string(),
            n_th1: c.tilde.n_th1.to_string(),
            n_th2: c.tilde.n_th2.to_string(),
            n_th11: c.tilde.n_th11.to_string(),
            n_th12: c.tilde.n_th12.to_string(),
            rank_histogram: c
                .rank_histogram
                .iter()
                .map(|(r, n)| (r.to_string(), n.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub attempts: String,
    pub rejected_for: Vec<String>,
}

impl From<&SamplingStats> for Sampling {
    fn from(s: &SamplingStats) -> Self {
        Self {
            attempts: s.attempts.to_string(),
            rejected_for: s.rejected_for.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub q: Option<u32>,
    pub seed: Option<String>,
    pub version: String,
    pub counts: Option<Counts>,
    pub checks: Vec<Check>,
    pub sampling: Option<Sampling>,
    pub timing_ms: BTreeMap<String, String>,
    pub verdict: bool,
}

impl VerificationReport {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            q: None,
            seed: None,
            version: crate::VERSION.to_string(),
            counts: None,
            checks: Vec::new(),
            sampling: None,
            timing_ms: BTreeMap::new(),
            verdict: false,
        }
    }

    /// Sets the verdict to the conjunction of all checks.
    pub fn seal(mut self) -> Self {
        self.verdict = !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
