//! Verification report: one entry per acceptance check, with stable
//! expected/actual summaries. Apart from the duration fields, identical
//! runs render byte-identically.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub duration_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub all_pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            };
            let params = c
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!(
                "{status}  {id:<32} [{params}] ({ms} ms)\n",
                id = c.id,
                ms = c.duration_ms
            ));
            if c.status == CheckStatus::Fail {
                out.push_str(&format!("      expected: {}\n", c.expected));
                out.push_str(&format!("      actual:   {}\n", c.actual));
            }
        }
        let verdict = if self.all_pass {
            "all checks passed"
        } else {
            "SOME CHECKS FAILED"
        };
        out.push_str(&format!(
            "{}/{} checks passed: {verdict}\n",
            self.checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count(),
            self.checks.len()
        ));
        out
    }
}
