use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linmod::algebra::Bounds;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail { counterexample: String },
    Inconclusive { reason: String },
}

impl CheckStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckStatus::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckStatus::Fail { .. })
    }
}

/// Per-check outcomes, keyed by check name so the order is independent of
/// evaluation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, CheckStatus>,
    pub bounds: Bounds,
    /// Thickness enumeration bound on `dim A + dim C`.
    pub thickness_bound: usize,
}

impl VerificationReport {
    pub fn new(bounds: Bounds, thickness_bound: usize) -> Self {
        VerificationReport { checks: BTreeMap::new(), bounds, thickness_bound }
    }

    pub fn record(&mut self, name: &str, status: CheckStatus) {
        self.checks.insert(name.to_string(), status);
    }

    pub fn status(&self, name: &str) -> Option<&CheckStatus> {
        self.checks.get(name)
    }

    pub fn has_failure(&self) -> bool {
        self.checks.values().any(CheckStatus::is_fail)
    }

    pub fn has_inconclusive(&self) -> bool {
        self.checks.values().any(|c| matches!(c, CheckStatus::Inconclusive { .. }))
    }

    pub fn first_failure(&self) -> Option<(&str, &CheckStatus)> {
        self.checks.iter().find(|(_, c)| c.is_fail()).map(|(k, c)| (k.as_str(), c))
    }
}
