use hovey_core::classcat::{build_catalog_with, Catalog, CotorsionPair, ObjectClass};
use hovey_core::hovey::{
    build_hovey_triple, classify_morphism, record_pair_checks, CheckStatus, CompatibilityReport, Evidence,
    PairClasses, VerificationReport,
};
use hovey_core::linmod::{Budget, Morphism};
use hovey_core::{Error, Result};

use crate::report::*;
use crate::spec::{PairSpec, RunSpec};

/// Random trials allowed per isomorphism question once `--seed` is given.
const SEEDED_TRIALS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Catalog,
    ExtTable,
    CheckPair,
    BuildHovey,
    Classify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::ExtTable => "ext-table",
            Command::CheckPair => "check-pair",
            Command::BuildHovey => "build-hovey",
            Command::Classify => "classify",
        }
    }
}

fn names(cat: &Catalog, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
    ids.into_iter().map(|i| cat.name(i).to_string()).collect()
}

fn resolve_pair(cat: &Catalog, p: &PairSpec) -> Result<(ObjectClass, ObjectClass)> {
    Ok((ObjectClass::parse(cat, &p.left.words())?, ObjectClass::parse(cat, &p.right.words())?))
}

fn pair_section(label: &str, p: &CotorsionPair, cat: &Catalog, work: &mut Work) -> PairSection {
    let mut r = VerificationReport::new(cat.algebra().bounds(), 0);
    record_pair_checks(&mut r, label, 0, p, cat);
    let get = |i: usize, what: &str| r.status(&format!("{i:02}_{label}_{what}")).cloned().expect("recorded");
    let approximations = p
        .completeness
        .iter()
        .map(|e| {
            work.witness_candidates += e.preenvelope.candidates_tried + e.precover.candidates_tried;
            ApproximationRow {
                object: cat.name(e.id).to_string(),
                preenvelope: SearchRow::from_search(&e.preenvelope, cat),
                precover: SearchRow::from_search(&e.precover, cat),
            }
        })
        .collect();
    PairSection {
        label: label.to_string(),
        left: names(cat, p.left.members.iter().copied()),
        right: names(cat, p.right.members.iter().copied()),
        cotorsion: get(0, "cotorsion"),
        hereditary: get(1, "hereditary"),
        complete: get(2, "complete"),
        ext2_violations: p
            .heredity
            .ext2_violations
            .iter()
            .map(|&(a, b)| [cat.name(a).to_string(), cat.name(b).to_string()])
            .collect(),
        spot_check_sequences: p.heredity.sequences_checked,
        approximations,
    }
}

fn compat_section(c: &CompatibilityReport, cat: &Catalog) -> CompatibilitySection {
    CompatibilitySection {
        condition1: c.condition1(),
        condition2: c.condition2(),
        r_tilde_outside_r: names(cat, c.r_tilde_outside_r.iter().copied()),
        q_tilde_outside_q: names(cat, c.q_tilde_outside_q.iter().copied()),
        only_in_q_tilde_cap_r: names(cat, c.only_in_q_tilde_cap_r.iter().copied()),
        only_in_q_cap_r_tilde: names(cat, c.only_in_q_cap_r_tilde.iter().copied()),
    }
}

fn fill_evidence(report: &mut Report, ev: &Evidence, cat: &Catalog) {
    for (label, p) in [("pair1", &ev.pair1), ("pair2", &ev.pair2)] {
        if let Some(p) = p {
            let s = pair_section(label, p, cat, &mut report.timing);
            report.pairs.push(s);
        }
    }
    report.compatibility = ev.compatibility.as_ref().map(|c| compat_section(c, cat));
    if let Some(w) = &ev.w {
        let table = w
            .table
            .iter()
            .map(|m| {
                report.timing.witness_candidates += m.coresolution.candidates_tried + m.resolution.candidates_tried;
                WRow {
                    object: cat.name(m.id).to_string(),
                    member: m.member(),
                    coresolution: SearchRow::from_search(&m.coresolution, cat),
                    resolution: SearchRow::from_search(&m.resolution, cat),
                }
            })
            .collect();
        report.w = Some(WSection { members: names(cat, w.class.members.iter().copied()), table });
    }
    if let Some(t) = &ev.thickness {
        report.timing.thickness_sequences = t.sequences;
    }
    report.thickness = ev.thickness.clone();
    report.identities = ev.identities.clone();
}

fn summarize(v: &VerificationReport) -> String {
    match v.first_failure() {
        Some((name, CheckStatus::Fail { counterexample })) => format!("rejected at {name}: {counterexample}"),
        _ if v.has_inconclusive() => "certified with inconclusive entries".into(),
        _ => "certified".into(),
    }
}

pub fn run(spec: &RunSpec, command: Command) -> Result<Report> {
    let budget = match spec.echo.seed {
        Some(seed) => Budget::with_random(SEEDED_TRIALS, seed),
        None => Budget::default(),
    };
    let cat = build_catalog_with(&spec.algebra, budget)?;
    let mut report = Report {
        command: command.name().into(),
        spec: spec.echo.clone(),
        catalog: CatalogSection::from_catalog(&cat),
        ext_table: None,
        pairs: Vec::new(),
        compatibility: None,
        w: None,
        thickness: None,
        identities: None,
        classification: None,
        verification: None,
        verdict: Verdict::default(),
        timing: Work { catalog_rounds: cat.rounds, ..Work::default() },
    };
    let catalog_open = cat.truncated || cat.undecided;

    match command {
        Command::Catalog | Command::ExtTable => {
            if command == Command::ExtTable {
                report.ext_table = Some(ExtTable {
                    names: names(&cat, 0..cat.len()),
                    ext1: cat.ext1_table().to_vec(),
                    ext2: cat.ext2_table().to_vec(),
                });
            }
            report.verdict = Verdict {
                passed: true,
                inconclusive: catalog_open,
                certified: None,
                summary: format!("{} indecomposables", cat.len()),
            };
        }
        Command::CheckPair => {
            let mut failed = Vec::new();
            let mut open = catalog_open;
            for (label, p) in [("pair1", &spec.echo.pair1), ("pair2", &spec.echo.pair2)] {
                let (l, r) = resolve_pair(&cat, p)?;
                let pair = CotorsionPair::verify(l, r, &cat)?;
                let s = pair_section(label, &pair, &cat, &mut report.timing);
                for st in [&s.cotorsion, &s.hereditary, &s.complete] {
                    match st {
                        CheckStatus::Fail { .. } => failed.push(label),
                        CheckStatus::Inconclusive { .. } => open = true,
                        CheckStatus::Pass => {}
                    }
                }
                report.pairs.push(s);
            }
            failed.dedup();
            report.verdict = Verdict {
                passed: failed.is_empty(),
                inconclusive: open,
                certified: None,
                summary: if failed.is_empty() {
                    "both pairs are complete hereditary cotorsion pairs".into()
                } else {
                    format!("failed: {}", failed.join(", "))
                },
            };
        }
        Command::BuildHovey | Command::Classify => {
            let morphism = if command == Command::Classify {
                let m = spec.echo.morphism.as_ref().ok_or_else(|| {
                    Error::Usage("classify needs a `morphism` entry in the spec file".into())
                })?;
                Some(Morphism::from_spec(&spec.algebra, m)?)
            } else {
                None
            };
            let (q, r_tilde) = resolve_pair(&cat, &spec.echo.pair1)?;
            let (q_tilde, r) = resolve_pair(&cat, &spec.echo.pair2)?;
            let classes = PairClasses { q, r_tilde, q_tilde, r };
            match build_hovey_triple(&classes, &cat, spec.echo.thickness_bound)? {
                Ok(triple) => {
                    fill_evidence(&mut report, &triple.evidence, &cat);
                    if let Some(f) = &morphism {
                        report.classification = Some(classify_morphism(f, &triple, &cat)?);
                    }
                    let undecided = report.classification.as_ref().is_some_and(|c| c.undecided);
                    report.verdict = Verdict {
                        passed: true,
                        inconclusive: triple.report.has_inconclusive() || undecided,
                        certified: Some(true),
                        summary: summarize(&triple.report),
                    };
                    report.verification = Some(triple.report);
                }
                Err(rej) => {
                    fill_evidence(&mut report, &rej.evidence, &cat);
                    report.verdict = Verdict {
                        passed: false,
                        inconclusive: rej.report.has_inconclusive(),
                        certified: Some(false),
                        summary: summarize(&rej.report),
                    };
                    report.verification = Some(rej.report);
                }
            }
        }
    }
    Ok(report)
}
