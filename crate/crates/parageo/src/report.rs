//! Machine-readable check reports shared by the library pipelines and the
//! CLI. Serialization order is fixed by construction order so identical runs
//! produce byte-identical JSON.

use serde::{Deserialize, Serialize};

/// One executed check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    /// Residual or violation magnitude; 0.0 for boolean checks that pass
    /// structurally.
    pub violation: f64,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub details: serde_json::Value,
}

impl CheckEntry {
    pub fn new(name: &str, pass: bool, violation: f64) -> Self {
        Self {
            name: name.to_string(),
            pass,
            violation,
            details: serde_json::Value::Null,
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// Top-level report: a versioned list of checks plus a pass/fail summary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<CheckEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn from_checks(checks: Vec<CheckEntry>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Self {
            version: 1,
            checks,
            summary: Summary { passed, failed },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Fixed-width text rendering; JSON remains the contract.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(8)
            .max(8);
        for check in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {}  {:>12.3e}\n",
                check.name,
                if check.pass { "pass" } else { "FAIL" },
                check.violation,
                width = width
            ));
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed\n",
            self.summary.passed, self.summary.failed
        ));
        out
    }
}
