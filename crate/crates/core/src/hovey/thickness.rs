//! Retract closure and two-out-of-three for `W`, checked on catalog sums and
//! on realized extensions between them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classcat::catalog::Catalog;
use crate::classcat::class::{class_membership, Decision, ObjectClass};
use crate::classcat::witness::{multisets, WITNESS_CLASS_CAP};
use crate::error::Result;
use crate::homext::ext::ext1;
use crate::linmod::module::Module;
use crate::linmod::ops::direct_sum_over;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThicknessReport {
    pub retract_checks: usize,
    pub retract_violations: Vec<String>,
    pub sequences: usize,
    pub violations: Vec<String>,
    /// Some Ext space was only partly enumerated.
    pub capped: bool,
    pub undecided: bool,
    pub bound: usize,
}

impl ThicknessReport {
    pub fn passed(&self) -> bool {
        self.retract_violations.is_empty() && self.violations.is_empty()
    }
}

fn sum_of(cat: &Catalog, ids: &[usize]) -> Module {
    let parts: Vec<Module> = ids.iter().map(|&i| cat.module(i).clone()).collect();
    direct_sum_over(cat.algebra(), &parts).module
}

fn show(cat: &Catalog, ids: &[usize]) -> String {
    if ids.is_empty() {
        return "0".into();
    }
    ids.iter().map(|&i| cat.name(i)).collect::<Vec<_>>().join("⊕")
}

/// Every sum of at most three catalog objects splits back into its summands,
/// and lies in `W` exactly when each summand does.
fn check_retracts(w: &ObjectClass, cat: &Catalog, report: &mut ThicknessReport) -> Result<()> {
    let n = cat.len();
    let mut combos = Vec::new();
    for a in 0..n {
        combos.push(vec![a]);
        for b in a..n {
            combos.push(vec![a, b]);
            for c in b..n {
                combos.push(vec![a, b, c]);
            }
        }
    }
    for ids in combos {
        report.retract_checks += 1;
        let m = class_membership(w, cat, &sum_of(cat, &ids))?;
        if m.summands != ids {
            report.retract_violations.push(format!("{} splits as {}", show(cat, &ids), show(cat, &m.summands)));
            continue;
        }
        let expected = ids.iter().all(|&i| w.contains(i));
        match m.decision {
            Decision::Undecided => report.undecided = true,
            d if (d == Decision::Member) != expected => {
                report.retract_violations.push(format!("{} membership disagrees with its summands", show(cat, &ids)))
            }
            _ => {}
        }
    }
    Ok(())
}

struct PairOutcome {
    sequences: usize,
    violations: Vec<String>,
    capped: bool,
    undecided: bool,
}

fn check_pair(w: &ObjectClass, cat: &Catalog, a_ids: &[usize], c_ids: &[usize]) -> Result<PairOutcome> {
    let mut out = PairOutcome { sequences: 0, violations: Vec::new(), capped: false, undecided: false };
    let a_in = a_ids.iter().all(|&i| w.contains(i));
    let c_in = c_ids.iter().all(|&i| w.contains(i));
    let space = ext1(&sum_of(cat, c_ids), &sum_of(cat, a_ids))?;
    let take = match space.class_count() {
        Some(n) if n <= WITNESS_CLASS_CAP => usize::MAX,
        _ => {
            out.capped = true;
            WITNESS_CLASS_CAP as usize
        }
    };
    for class in space.classes().take(take) {
        out.sequences += 1;
        let s = space.realize(&class)?;
        let m = class_membership(w, cat, s.middle())?;
        let b_in = match m.decision {
            Decision::Member => true,
            Decision::NotMember => false,
            Decision::Undecided => {
                out.undecided = true;
                continue;
            }
        };
        let broken = match (a_in, b_in, c_in) {
            (true, false, true) => Some("extension closure"),
            (true, true, false) => Some("quotient closure"),
            (false, true, true) => Some("kernel closure"),
            _ => None,
        };
        if let Some(rule) = broken {
            out.violations.push(format!(
                "{rule}: {} ↣ {} ↠ {} (class {:?})",
                show(cat, a_ids),
                show(cat, &m.summands),
                show(cat, c_ids),
                class.coordinates
            ));
        }
    }
    Ok(out)
}

/// Retract sanity plus two-out-of-three on every `A ↣ B ↠ C` with `A`, `C`
/// nonzero catalog sums, `dim A + dim C ≤ bound`, and `B` running over all
/// realized extension classes.
pub fn verify_thickness(w: &ObjectClass, cat: &Catalog, bound: usize) -> Result<ThicknessReport> {
    let mut report = ThicknessReport { bound, ..ThicknessReport::default() };
    check_retracts(w, cat, &mut report)?;

    let all = ObjectClass::all(cat);
    let sums: Vec<(Vec<usize>, usize)> = multisets(&all, cat, bound)
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| {
            let d = m.iter().map(|&i| cat.module(i).total_dim()).sum();
            (m, d)
        })
        .collect();
    let mut pairs = Vec::new();
    for (a, da) in &sums {
        for (c, dc) in &sums {
            if da + dc <= bound {
                pairs.push((a, c));
            }
        }
    }
    let outcomes =
        pairs.par_iter().map(|(a, c)| check_pair(w, cat, a, c)).collect::<Result<Vec<_>>>()?;
    for o in outcomes {
        report.sequences += o.sequences;
        report.violations.extend(o.violations);
        report.capped |= o.capped;
        report.undecided |= o.undecided;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classcat::catalog::build_catalog;
    use crate::demos;

    #[test]
    fn lambda_stable_thick() {
        let cat = build_catalog(&demos::lambda2()).unwrap();
        let w = ObjectClass::projectives(&cat);
        let r = verify_thickness(&w, &cat, 4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.sequences > 0);
        assert_eq!(r.retract_checks, 9);
    }

    #[test]
    fn simple_alone_is_not_thick() {
        let cat = build_catalog(&demos::lambda2()).unwrap();
        let w = ObjectClass::new("k", [cat.id_by_name("S1").unwrap()]);
        let r = verify_thickness(&w, &cat, 2).unwrap();
        // k ↣ P ↠ k has both ends in the class but not the middle
        assert!(r.violations.iter().any(|v| v.starts_with("extension closure")));
    }
}
