//! Analysis reports as JSON.

use std::time::Duration;

use hazardkit_core::detect::WitnessCheck;
use hazardkit_core::HazardReport;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Hazard,
    HazardFree,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub result: Outcome,
    /// `"1-hazard"` or `"0-hazard"`.
    pub kind: Option<String>,
    pub witness: Option<String>,
    pub method: String,
    pub elapsed_ms: f64,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

impl AnalysisReport {
    pub fn from_hazard_report(rep: &HazardReport, num_vars: usize, elapsed: Duration) -> Self {
        let mut meta = Map::new();
        meta.insert("num_vars".into(), num_vars.into());
        let check = match rep.check {
            WitnessCheck::Verified => "verified",
            WitnessCheck::Skipped => "skipped",
            WitnessCheck::NotApplicable => "none",
        };
        meta.insert("witness_check".into(), check.into());
        AnalysisReport {
            result: if rep.found() {
                Outcome::Hazard
            } else {
                Outcome::HazardFree
            },
            kind: rep.kind().map(|k| k.as_str().to_string()),
            witness: rep.witness().map(ToString::to_string),
            method: rep.method.as_str().to_string(),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            meta,
        }
    }

    pub fn unknown(method: &str, num_vars: usize, elapsed: Duration) -> Self {
        let mut meta = Map::new();
        meta.insert("num_vars".into(), num_vars.into());
        AnalysisReport {
            result: Outcome::Unknown,
            kind: None,
            witness: None,
            method: method.to_string(),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            meta,
        }
    }

    pub fn note(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// One line for standard error.
    pub fn summary(&self) -> String {
        match (&self.result, &self.kind, &self.witness) {
            (Outcome::Hazard, Some(k), Some(w)) => format!("{k} at {w} ({})", self.method),
            (Outcome::HazardFree, ..) => format!("hazard-free ({})", self.method),
            _ => format!("unknown ({})", self.method),
        }
    }
}
