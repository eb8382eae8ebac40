//! Verification of cotorsion pairs over a catalog: orthogonality, both
//! orthogonal equalities, heredity and completeness witnesses.

use crate::classcat::catalog::Catalog;
use crate::classcat::class::{class_membership, left_orth, right_orth, Decision, ObjectClass};
use crate::classcat::witness::{special_precover, special_preenvelope, SearchStatus, WitnessSearch};
use crate::error::Result;
use crate::homext::ext::ext1;

/// Extension classes realized per pair of objects in the heredity spot check.
const SPOT_CHECK_CLASSES: usize = 64;

#[derive(Clone, Debug)]
pub struct PairReport {
    /// `(q, r)` with `Ext^1(q, r) ≠ 0`.
    pub orthogonality_violations: Vec<(usize, usize)>,
    /// Members of `^⊥R` missing from the left class.
    pub left_missing: Vec<usize>,
    /// Members of `Q^⊥` missing from the right class.
    pub right_missing: Vec<usize>,
    /// Left members not in `^⊥R`, right members not in `Q^⊥`.
    pub left_extra: Vec<usize>,
    pub right_extra: Vec<usize>,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.orthogonality_violations.is_empty()
            && self.left_missing.is_empty()
            && self.right_missing.is_empty()
            && self.left_extra.is_empty()
            && self.right_extra.is_empty()
    }
}

pub fn verify_cotorsion_pair(left: &ObjectClass, right: &ObjectClass, cat: &Catalog) -> PairReport {
    let mut orthogonality_violations = Vec::new();
    for &q in &left.members {
        for &r in &right.members {
            if cat.ext1_dim(q, r) != 0 {
                orthogonality_violations.push((q, r));
            }
        }
    }
    let lo = left_orth(right, cat);
    let ro = right_orth(left, cat);
    PairReport {
        orthogonality_violations,
        left_missing: lo.difference(left),
        right_missing: ro.difference(right),
        left_extra: left.difference(&lo),
        right_extra: right.difference(&ro),
    }
}

#[derive(Clone, Debug)]
pub struct HeredityReport {
    /// `(q, r)` with `Ext^2(q, r) ≠ 0`.
    pub ext2_violations: Vec<(usize, usize)>,
    pub sequences_checked: usize,
    /// Sequences `A ↣ B ↠ C` breaking closure under kernels of epis (left)
    /// or cokernels of monos (right), as descriptions.
    pub closure_violations: Vec<String>,
    pub undecided: bool,
}

impl HeredityReport {
    pub fn passed(&self) -> bool {
        self.ext2_violations.is_empty() && self.closure_violations.is_empty()
    }
}

/// `Ext^2(Q, R) = 0` from the catalog tables, plus a spot check of the closure
/// properties on realized extensions between catalog objects.
pub fn verify_hereditary(left: &ObjectClass, right: &ObjectClass, cat: &Catalog) -> Result<HeredityReport> {
    let mut report =
        HeredityReport { ext2_violations: Vec::new(), sequences_checked: 0, closure_violations: Vec::new(), undecided: false };
    for &q in &left.members {
        for &r in &right.members {
            if cat.ext2_dim(q, r) != 0 {
                report.ext2_violations.push((q, r));
            }
        }
    }
    // left closed under kernels of epis: B, C ∈ Q forces A ∈ Q
    for &c in &left.members {
        for a in 0..cat.len() {
            if left.contains(a) {
                continue;
            }
            let space = ext1(cat.module(c), cat.module(a))?;
            for class in space.classes().skip(1).take(SPOT_CHECK_CLASSES) {
                report.sequences_checked += 1;
                let s = space.realize(&class)?;
                match class_membership(left, cat, s.middle())?.decision {
                    Decision::Member => report.closure_violations.push(format!(
                        "{} ↣ B ↠ {} with B in {} but {} not in it",
                        cat.name(a),
                        cat.name(c),
                        left.label,
                        cat.name(a)
                    )),
                    Decision::Undecided => report.undecided = true,
                    Decision::NotMember => {}
                }
            }
        }
    }
    // right closed under cokernels of monos: A, B ∈ R forces C ∈ R
    for &a in &right.members {
        for c in 0..cat.len() {
            if right.contains(c) {
                continue;
            }
            let space = ext1(cat.module(c), cat.module(a))?;
            for class in space.classes().skip(1).take(SPOT_CHECK_CLASSES) {
                report.sequences_checked += 1;
                let s = space.realize(&class)?;
                match class_membership(right, cat, s.middle())?.decision {
                    Decision::Member => report.closure_violations.push(format!(
                        "{} ↣ B ↠ {} with B in {} but {} not in it",
                        cat.name(a),
                        cat.name(c),
                        right.label,
                        cat.name(c)
                    )),
                    Decision::Undecided => report.undecided = true,
                    Decision::NotMember => {}
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CompletenessEntry {
    pub id: usize,
    pub preenvelope: WitnessSearch,
    pub precover: WitnessSearch,
}

/// Searches both approximations for every catalog object.
pub fn verify_complete(left: &ObjectClass, right: &ObjectClass, cat: &Catalog) -> Result<Vec<CompletenessEntry>> {
    (0..cat.len())
        .map(|id| {
            let m = cat.module(id);
            Ok(CompletenessEntry {
                id,
                preenvelope: special_preenvelope(m, left, right, cat)?,
                precover: special_precover(m, left, right, cat)?,
            })
        })
        .collect()
}

/// A cotorsion pair together with everything verified about it.
#[derive(Clone, Debug)]
pub struct CotorsionPair {
    pub left: ObjectClass,
    pub right: ObjectClass,
    pub pair: PairReport,
    pub heredity: HeredityReport,
    pub completeness: Vec<CompletenessEntry>,
}

impl CotorsionPair {
    pub fn verify(left: ObjectClass, right: ObjectClass, cat: &Catalog) -> Result<Self> {
        let pair = verify_cotorsion_pair(&left, &right, cat);
        let heredity = verify_hereditary(&left, &right, cat)?;
        let completeness = verify_complete(&left, &right, cat)?;
        Ok(CotorsionPair { left, right, pair, heredity, completeness })
    }

    pub fn is_complete(&self) -> bool {
        self.completeness.iter().all(|e| e.preenvelope.found() && e.precover.found())
    }

    /// Some approximation is missing only because of the search bound.
    pub fn completeness_inconclusive(&self) -> bool {
        self.completeness.iter().any(|e| {
            [&e.preenvelope, &e.precover].iter().any(|s| s.status == SearchStatus::NotFoundWithinBound)
        })
    }

    pub fn is_certified(&self) -> bool {
        self.pair.passed() && self.heredity.passed() && self.is_complete()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classcat::catalog::build_catalog;
    use crate::demos;

    #[test]
    fn lambda_pairs() {
        let cat = build_catalog(&demos::lambda2()).unwrap();
        let all = ObjectClass::all(&cat);
        let proj = ObjectClass::projectives(&cat);
        let p = CotorsionPair::verify(all.clone(), proj.clone(), &cat).unwrap();
        assert!(p.is_certified());
        let p = CotorsionPair::verify(proj.clone(), all.clone(), &cat).unwrap();
        assert!(p.is_certified());
    }

    #[test]
    fn lambda_bad_pair() {
        let cat = build_catalog(&demos::lambda2()).unwrap();
        let k = ObjectClass::parse(&cat, &["S1".into()]).unwrap();
        let report = verify_cotorsion_pair(&k, &ObjectClass::all(&cat), &cat);
        assert!(!report.passed());
        assert!(!report.orthogonality_violations.is_empty());
    }

    #[test]
    fn a2_pairs() {
        let cat = build_catalog(&demos::a2()).unwrap();
        let all = ObjectClass::all(&cat);
        let proj = ObjectClass::projectives(&cat);
        let inj = ObjectClass::injectives(&cat);
        assert!(CotorsionPair::verify(all.clone(), inj, &cat).unwrap().is_certified());
        assert!(CotorsionPair::verify(proj, all, &cat).unwrap().is_certified());
    }

    #[test]
    fn non_hereditary_closure_detected() {
        let cat = build_catalog(&demos::a2()).unwrap();
        let s1 = cat.id_by_name("S1").unwrap();
        let p1 = cat.id_by_name("P1").unwrap();
        // S2 ↣ P1 ↠ S1 with P1, S1 in the class but S2 not
        let left = ObjectClass::new("test", [s1, p1]);
        let r = verify_hereditary(&left, &ObjectClass::zero(), &cat).unwrap();
        assert_eq!(r.closure_violations.len(), 1);
        assert_eq!(r.sequences_checked, 1);
    }
}
