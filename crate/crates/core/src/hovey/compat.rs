use serde::{Deserialize, Serialize};

use crate::classcat::class::ObjectClass;

/// Compatibility of `(Q, R̃)` and `(Q̃, R)`: condition (1) `R̃ ⊆ R`, `Q̃ ⊆ Q`;
/// condition (2) `Q̃ ∩ R = Q ∩ R̃`. Sets are catalog ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    /// `R̃ \ R`.
    pub r_tilde_outside_r: Vec<usize>,
    /// `Q̃ \ Q`.
    pub q_tilde_outside_q: Vec<usize>,
    /// `(Q̃ ∩ R) \ (Q ∩ R̃)`.
    pub only_in_q_tilde_cap_r: Vec<usize>,
    /// `(Q ∩ R̃) \ (Q̃ ∩ R)`.
    pub only_in_q_cap_r_tilde: Vec<usize>,
}

impl CompatibilityReport {
    pub fn condition1(&self) -> bool {
        self.r_tilde_outside_r.is_empty() && self.q_tilde_outside_q.is_empty()
    }

    pub fn condition2(&self) -> bool {
        self.only_in_q_tilde_cap_r.is_empty() && self.only_in_q_cap_r_tilde.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.condition1() && self.condition2()
    }
}

pub fn check_compatibility(
    q: &ObjectClass,
    r_tilde: &ObjectClass,
    q_tilde: &ObjectClass,
    r: &ObjectClass,
) -> CompatibilityReport {
    let a = q_tilde.intersection(r);
    let b = q.intersection(r_tilde);
    CompatibilityReport {
        r_tilde_outside_r: r_tilde.difference(r),
        q_tilde_outside_q: q_tilde.difference(q),
        only_in_q_tilde_cap_r: a.difference(&b),
        only_in_q_cap_r_tilde: b.difference(&a),
    }
}
