//! On-disk form of a `W` system.
//!
//! ```json
//! { "q": 3, "seed": 7, "coeff_order": "upper-row-major-(1,2)..(6,7)",
//!   "forms": [[c12, c13, ..., c67], ... 7 rows],
//!   "rank_histogram": { "4": 49, "6": 1044 } }
//! ```
//!
//! Loading re-checks everything: coefficient range, independence, the rank
//! dichotomy, and that the stored histogram matches a fresh census.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use pgcensus_core::altform::{AlternatingForm, DIM, NUM_COEFFS};
use pgcensus_core::census::{check_genericity, WSystem};
use pgcensus_core::FieldCtx;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

pub const COEFF_ORDER: &str = "upper-row-major-(1,2)..(6,7)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WSystemFile {
    pub q: u32,
    pub seed: u64,
    pub coeff_order: String,
    pub forms: Vec<Vec<u32>>,
    pub rank_histogram: BTreeMap<String, u64>,
}

impl WSystemFile {
    pub fn from_system(w: &WSystem, histogram: &BTreeMap<usize, u64>) -> Self {
        Self {
            q: w.q(),
            seed: w.seed(),
            coeff_order: COEFF_ORDER.to_string(),
            forms: w
                .forms()
                .iter()
                .map(|f| f.coeffs().iter().map(|&c| c as u32).collect())
                .collect(),
            rank_histogram: histogram
                .iter()
                .map(|(r, n)| (r.to_string(), *n))
                .collect(),
        }
    }

    /// Rebuilds the system and re-certifies it.
    pub fn into_system(self, workers: usize) -> Result<WSystem, HarnessError> {
        let bad = |msg: String| HarnessError::MalformedW(msg);
        if self.coeff_order != COEFF_ORDER {
            return Err(bad(format!("unknown coeff_order {:?}", self.coeff_order)));
        }
        let ctx = FieldCtx::new(self.q).map_err(|e| bad(e.to_string()))?;
        if self.forms.len() != DIM {
            return Err(bad(format!("expected {DIM} forms, found {}", self.forms.len())));
        }
        let mut forms = [AlternatingForm::ZERO; DIM];
        for (k, row) in self.forms.iter().enumerate() {
            if row.len() != NUM_COEFFS {
                return Err(bad(format!(
                    "form {k} has {} coefficients, expected {NUM_COEFFS}",
                    row.len()
                )));
            }
            let mut coeffs = [0u8; NUM_COEFFS];
            for (s, &c) in row.iter().enumerate() {
                if c >= self.q {
                    return Err(bad(format!(
                        "form {k} coefficient {s} is {c}, not a residue mod {}",
                        self.q
                    )));
                }
                coeffs[s] = c as u8;
            }
            forms[k] = AlternatingForm::from_coeffs(&ctx, coeffs).expect("range checked");
        }
        let w = WSystem::new(ctx, forms, self.seed).map_err(|e| bad(e.to_string()))?;
        let g = check_genericity(&w, workers)?;
        if let Some(witness) = g.witness {
            return Err(HarnessError::NotGeneric(witness.to_string()));
        }
        let fresh: BTreeMap<String, u64> =
            g.histogram.iter().map(|(r, n)| (r.to_string(), *n)).collect();
        if fresh != self.rank_histogram {
            return Err(bad(format!(
                "stored rank_histogram {:?} does not match recomputed {:?}",
                self.rank_histogram, fresh
            )));
        }
        Ok(w)
    }
}

pub fn save_w(path: &Path, w: &WSystem, histogram: &BTreeMap<usize, u64>) -> Result<(), HarnessError> {
    let file = WSystemFile::from_system(w, histogram);
    let mut text = serde_json::to_string_pretty(&file).expect("serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

pub fn load_w(path: &Path, workers: usize) -> Result<WSystem, HarnessError> {
    let text =
        fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    let file: WSystemFile =
        serde_json::from_str(&text).map_err(|e| HarnessError::MalformedW(e.to_string()))?;
    file.into_system(workers)
}
