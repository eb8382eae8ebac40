//! Gated certification of a Hovey triple `(Q, W, R)` from `(Q, R̃)` and
//! `(Q̃, R)`, plus classification of morphisms against it.

use serde::{Deserialize, Serialize};

use crate::classcat::catalog::Catalog;
use crate::classcat::class::{class_membership, Decision, ObjectClass};
use crate::classcat::pair::CotorsionPair;
use crate::classcat::witness::SearchStatus;
use crate::error::{Error, Result};
use crate::hovey::compat::{check_compatibility, CompatibilityReport};
use crate::hovey::report::{CheckStatus, VerificationReport};
use crate::hovey::thickness::{verify_thickness, ThicknessReport};
use crate::hovey::wclass::{compute_w, WClass};
use crate::linmod::morphism::Morphism;
use crate::linmod::ops::{cokernel_of, kernel_of, split_mono_retraction};

/// Default bound on `dim A + dim C` for the two-out-of-three enumeration.
pub const DEFAULT_THICKNESS_BOUND: usize = 6;

/// The four input classes: pairs `(Q, R̃)` and `(Q̃, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClasses {
    pub q: ObjectClass,
    pub r_tilde: ObjectClass,
    pub q_tilde: ObjectClass,
    pub r: ObjectClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub q_cap_w: Vec<usize>,
    pub q_tilde: Vec<usize>,
    pub w_cap_r: Vec<usize>,
    pub r_tilde: Vec<usize>,
    /// For each `X ∈ W ∩ R`: whether its coresolution witness splits.
    pub retractions: Vec<(usize, bool)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.q_cap_w == self.q_tilde && self.w_cap_r == self.r_tilde && self.retractions.iter().all(|r| r.1)
    }
}

/// `Q ∩ W = Q̃`, `W ∩ R = R̃`, and an explicit retraction of `X ↣ R̃-object`
/// for every `X ∈ W ∩ R`.
pub fn verify_identities(classes: &PairClasses, w: &WClass) -> IdentityReport {
    let q_cap_w = classes.q.intersection(&w.class);
    let w_cap_r = w.class.intersection(&classes.r);
    let retractions = w_cap_r
        .members
        .iter()
        .map(|&id| {
            let split = w.table[id]
                .coresolution
                .witness
                .as_ref()
                .is_some_and(|s| split_mono_retraction(s.mono()).is_some());
            (id, split)
        })
        .collect();
    IdentityReport {
        q_cap_w: q_cap_w.members.into_iter().collect(),
        q_tilde: classes.q_tilde.members.iter().copied().collect(),
        w_cap_r: w_cap_r.members.into_iter().collect(),
        r_tilde: classes.r_tilde.members.iter().copied().collect(),
        retractions,
    }
}

/// Everything computed on the way to a verdict; later stages are absent when
/// an earlier gate failed.
#[derive(Clone, Debug, Default)]
pub struct Evidence {
    pub pair1: Option<CotorsionPair>,
    pub pair2: Option<CotorsionPair>,
    pub compatibility: Option<CompatibilityReport>,
    pub w: Option<WClass>,
    pub thickness: Option<ThicknessReport>,
    pub identities: Option<IdentityReport>,
}

#[derive(Clone, Debug)]
pub struct HoveyTriple {
    pub q: ObjectClass,
    pub w: ObjectClass,
    pub r: ObjectClass,
    pub classes: PairClasses,
    pub evidence: Evidence,
    pub report: VerificationReport,
}

#[derive(Clone, Debug)]
pub struct Rejection {
    pub report: VerificationReport,
    pub evidence: Evidence,
}

fn names(cat: &Catalog, ids: &[usize]) -> String {
    format!("{{{}}}", ids.iter().map(|&i| cat.name(i)).collect::<Vec<_>>().join(", "))
}

/// Records the cotorsion, heredity and completeness checks of one pair under
/// keys `{offset}_{tag}_*`, `{offset+1}_…`, `{offset+2}_…`.
pub fn record_pair_checks(report: &mut VerificationReport, tag: &str, offset: usize, p: &CotorsionPair, cat: &Catalog) {
    let key = |i: usize, what: &str| format!("{:02}_{tag}_{what}", offset + i);
    let status = if p.pair.passed() {
        CheckStatus::Pass
    } else {
        let mut parts = Vec::new();
        for &(a, b) in &p.pair.orthogonality_violations {
            parts.push(format!("Ext^1({}, {}) ≠ 0", cat.name(a), cat.name(b)));
        }
        for (what, ids) in [
            ("missing from left", &p.pair.left_missing),
            ("missing from right", &p.pair.right_missing),
            ("left but not orthogonal", &p.pair.left_extra),
            ("right but not orthogonal", &p.pair.right_extra),
        ] {
            if !ids.is_empty() {
                parts.push(format!("{what}: {}", names(cat, ids)));
            }
        }
        CheckStatus::Fail { counterexample: parts.join("; ") }
    };
    report.record(&key(0, "cotorsion"), status);

    let h = &p.heredity;
    let status = if !h.passed() {
        let mut parts: Vec<String> =
            h.ext2_violations.iter().map(|&(a, b)| format!("Ext^2({}, {}) ≠ 0", cat.name(a), cat.name(b))).collect();
        parts.extend(h.closure_violations.iter().cloned());
        CheckStatus::Fail { counterexample: parts.join("; ") }
    } else if h.undecided {
        CheckStatus::Inconclusive { reason: "undecided membership in the closure spot check".into() }
    } else {
        CheckStatus::Pass
    };
    report.record(&key(1, "hereditary"), status);

    let mut failed = Vec::new();
    let mut open = Vec::new();
    for e in &p.completeness {
        for (what, s) in [("preenvelope", &e.preenvelope), ("precover", &e.precover)] {
            match s.status {
                SearchStatus::Found => {}
                SearchStatus::NotFoundWithinBound => open.push(format!("{what} of {}", cat.name(e.id))),
                _ if s.conclusive() => failed.push(format!("no {what} of {}", cat.name(e.id))),
                _ => open.push(format!("{what} of {}", cat.name(e.id))),
            }
        }
    }
    let status = if !failed.is_empty() {
        CheckStatus::Fail { counterexample: failed.join("; ") }
    } else if !open.is_empty() {
        CheckStatus::Inconclusive { reason: format!("not found within bound: {}", open.join("; ")) }
    } else {
        CheckStatus::Pass
    };
    report.record(&key(2, "complete"), status);
}

/// Runs every gate in order: both pairs, compatibility, `W` by both
/// descriptions, thickness, identities. Stops at the first failing gate.
pub fn build_hovey_triple(
    classes: &PairClasses,
    cat: &Catalog,
    thickness_bound: usize,
) -> Result<std::result::Result<HoveyTriple, Rejection>> {
    let mut report = VerificationReport::new(cat.algebra().bounds(), thickness_bound);
    let mut evidence = Evidence::default();
    macro_rules! gate {
        () => {
            if report.has_failure() {
                return Ok(Err(Rejection { report, evidence }));
            }
        };
    }

    let catalog_status = match (cat.truncated, cat.undecided) {
        (false, false) => CheckStatus::Pass,
        (t, u) => CheckStatus::Inconclusive {
            reason: format!("catalog truncated: {t}, undecided decompositions: {u}"),
        },
    };
    report.record("00_catalog", catalog_status);

    let pair1 = CotorsionPair::verify(classes.q.clone(), classes.r_tilde.clone(), cat)?;
    let pair2 = CotorsionPair::verify(classes.q_tilde.clone(), classes.r.clone(), cat)?;
    record_pair_checks(&mut report, "pair1", 1, &pair1, cat);
    record_pair_checks(&mut report, "pair2", 4, &pair2, cat);
    evidence.pair1 = Some(pair1);
    evidence.pair2 = Some(pair2);
    gate!();

    let compat = check_compatibility(&classes.q, &classes.r_tilde, &classes.q_tilde, &classes.r);
    report.record(
        "07_condition1",
        if compat.condition1() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail {
                counterexample: format!(
                    "R̃ \\ R = {}; Q̃ \\ Q = {}",
                    names(cat, &compat.r_tilde_outside_r),
                    names(cat, &compat.q_tilde_outside_q)
                ),
            }
        },
    );
    report.record(
        "08_condition2",
        if compat.condition2() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail {
                counterexample: format!(
                    "(Q̃ ∩ R) \\ (Q ∩ R̃) = {}; (Q ∩ R̃) \\ (Q̃ ∩ R) = {}",
                    names(cat, &compat.only_in_q_tilde_cap_r),
                    names(cat, &compat.only_in_q_cap_r_tilde)
                ),
            }
        },
    );
    evidence.compatibility = Some(compat);
    gate!();

    let w = match compute_w(&classes.q_tilde, &classes.r_tilde, cat) {
        Ok(w) => w,
        Err(e @ Error::DescriptionsDisagree { .. }) => {
            report.record("09_descriptions_agree", CheckStatus::Fail { counterexample: e.to_string() });
            return Ok(Err(Rejection { report, evidence }));
        }
        Err(e) => return Err(e),
    };
    let open = w.inconclusive_ids();
    report.record(
        "09_descriptions_agree",
        if open.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Inconclusive { reason: format!("absent only within bound: {}", names(cat, &open)) }
        },
    );
    let outside: Vec<usize> =
        classes.q_tilde.members.union(&classes.r_tilde.members).copied().filter(|&i| !w.class.contains(i)).collect();
    report.record(
        "10_containment",
        if outside.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail { counterexample: format!("Q̃ ∪ R̃ not in W: {}", names(cat, &outside)) }
        },
    );
    let w_class = w.class.clone();
    evidence.w = Some(w);
    gate!();

    let thick = verify_thickness(&w_class, cat, thickness_bound)?;
    report.record(
        "11_retracts",
        if !thick.retract_violations.is_empty() {
            CheckStatus::Fail { counterexample: thick.retract_violations.join("; ") }
        } else {
            CheckStatus::Pass
        },
    );
    report.record(
        "12_two_of_three",
        if !thick.violations.is_empty() {
            CheckStatus::Fail { counterexample: thick.violations.join("; ") }
        } else if thick.capped || thick.undecided {
            CheckStatus::Inconclusive {
                reason: format!("class enumeration capped: {}, undecided: {}", thick.capped, thick.undecided),
            }
        } else {
            CheckStatus::Pass
        },
    );
    evidence.thickness = Some(thick);
    gate!();

    let ids = verify_identities(classes, evidence.w.as_ref().expect("W computed"));
    let eq_status = |lhs: &[usize], rhs: &[usize], what: &str| {
        if lhs == rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail { counterexample: format!("{what}: {} vs {}", names(cat, lhs), names(cat, rhs)) }
        }
    };
    report.record("13_q_cap_w", eq_status(&ids.q_cap_w, &ids.q_tilde, "Q ∩ W vs Q̃"));
    report.record("14_w_cap_r", eq_status(&ids.w_cap_r, &ids.r_tilde, "W ∩ R vs R̃"));
    let unsplit: Vec<usize> = ids.retractions.iter().filter(|r| !r.1).map(|r| r.0).collect();
    report.record(
        "15_retractions",
        if unsplit.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail { counterexample: format!("no retraction for {}", names(cat, &unsplit)) }
        },
    );
    evidence.identities = Some(ids);
    gate!();

    Ok(Ok(HoveyTriple {
        q: classes.q.clone(),
        w: w_class,
        r: classes.r.clone(),
        classes: classes.clone(),
        evidence,
        report,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub cofibration: bool,
    pub trivial_cofibration: bool,
    pub fibration: bool,
    pub trivial_fibration: bool,
    /// `None` when the map is neither mono nor epi.
    pub weak_equivalence: Option<bool>,
    /// Some membership question was undecided (reported as false).
    pub undecided: bool,
}

pub fn classify_morphism(f: &Morphism, triple: &HoveyTriple, cat: &Catalog) -> Result<MorphismClass> {
    let mut undecided = false;
    let mut inside = |class: &ObjectClass, m: &crate::linmod::module::Module| -> Result<bool> {
        let d = class_membership(class, cat, m)?.decision;
        undecided |= d == Decision::Undecided;
        Ok(d == Decision::Member)
    };
    let (mono, epi) = (f.is_mono(), f.is_epi());
    let (mut cof, mut tcof, mut fib, mut tfib) = (false, false, false, false);
    let (mut coker_in_w, mut ker_in_w) = (false, false);
    if mono {
        let (c, _) = cokernel_of(f);
        cof = inside(&triple.q, &c)?;
        tcof = inside(&triple.classes.q_tilde, &c)?;
        coker_in_w = inside(&triple.w, &c)?;
    }
    if epi {
        let (k, _) = kernel_of(f);
        fib = inside(&triple.r, &k)?;
        tfib = inside(&triple.classes.r_tilde, &k)?;
        ker_in_w = inside(&triple.w, &k)?;
    }
    let weak_equivalence = match (mono, epi) {
        (true, true) => Some(true),
        (true, false) => Some(coker_in_w),
        (false, true) => Some(ker_in_w),
        (false, false) => None,
    };
    Ok(MorphismClass {
        mono,
        epi,
        cofibration: cof,
        trivial_cofibration: tcof,
        fibration: fib,
        trivial_fibration: tfib,
        weak_equivalence,
        undecided,
    })
}
