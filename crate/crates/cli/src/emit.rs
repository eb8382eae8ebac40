use std::fmt::Write;

use hovey_core::hovey::CheckStatus;

use crate::report::{Report, SearchRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(r),
    }
}

/// Inverse of the JSON form.
pub fn parse_report(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

fn status(c: &CheckStatus) -> String {
    match c {
        CheckStatus::Pass => "pass".into(),
        CheckStatus::Fail { counterexample } => format!("FAIL ({counterexample})"),
        CheckStatus::Inconclusive { reason } => format!("inconclusive ({reason})"),
    }
}

fn search(s: &SearchRow) -> String {
    let end = if s.far_end.is_empty() { "0".to_string() } else { s.far_end.join("⊕") };
    match s.status.as_str() {
        "found" => format!("found, far end {end}"),
        other => format!("{other} ({} candidates, bound {})", s.candidates_tried, s.bound),
    }
}

fn text(r: &Report) -> String {
    let mut out = String::new();
    let o = &mut out;
    let b = &r.spec.bounds;
    writeln!(o, "command: {} on {}", r.command, r.spec.source).unwrap();
    writeln!(
        o,
        "bounds: max_dim {}, max_iter {}, max_witness_dim {}, thickness {}",
        b.max_dim, b.max_iter, b.max_witness_dim, r.spec.thickness_bound
    )
    .unwrap();

    writeln!(o, "\ncatalog ({} objects, {} rounds)", r.catalog.entries.len(), r.catalog.rounds).unwrap();
    if r.catalog.truncated || r.catalog.undecided {
        writeln!(o, "  truncated: {}, undecided: {}", r.catalog.truncated, r.catalog.undecided).unwrap();
    }
    for e in &r.catalog.entries {
        let mut tags = Vec::new();
        if e.projective {
            tags.push("projective");
        }
        if e.injective {
            tags.push("injective");
        }
        writeln!(o, "  #{} {:<4} dims {:?} {} [{}]", e.id, e.name, e.dims, tags.join(" "), e.provenance.join("; "))
            .unwrap();
    }

    if let Some(t) = &r.ext_table {
        for (label, table) in [("Ext^1", &t.ext1), ("Ext^2", &t.ext2)] {
            writeln!(o, "\n{label} (row = first argument)").unwrap();
            writeln!(o, "  {:<6}{}", "", t.names.iter().map(|n| format!("{n:>5}")).collect::<String>()).unwrap();
            for (n, row) in t.names.iter().zip(table) {
                writeln!(o, "  {n:<6}{}", row.iter().map(|d| format!("{d:>5}")).collect::<String>()).unwrap();
            }
        }
    }

    for p in &r.pairs {
        writeln!(o, "\n{}: ({{{}}}, {{{}}})", p.label, p.left.join(", "), p.right.join(", ")).unwrap();
        writeln!(o, "  cotorsion:  {}", status(&p.cotorsion)).unwrap();
        writeln!(o, "  hereditary: {} ({} spot-check sequences)", status(&p.hereditary), p.spot_check_sequences)
            .unwrap();
        writeln!(o, "  complete:   {}", status(&p.complete)).unwrap();
        for a in &p.approximations {
            writeln!(o, "    {:<4} preenvelope {}; precover {}", a.object, search(&a.preenvelope), search(&a.precover))
                .unwrap();
        }
    }

    if let Some(c) = &r.compatibility {
        writeln!(o, "\ncompatibility").unwrap();
        writeln!(o, "  condition (1): {}", if c.condition1 { "pass" } else { "FAIL" }).unwrap();
        if !c.condition1 {
            writeln!(o, "    R̃ \\ R = {:?}, Q̃ \\ Q = {:?}", c.r_tilde_outside_r, c.q_tilde_outside_q).unwrap();
        }
        writeln!(o, "  condition (2): {}", if c.condition2 { "pass" } else { "FAIL" }).unwrap();
        if !c.condition2 {
            writeln!(o, "    only in Q̃ ∩ R: {:?}; only in Q ∩ R̃: {:?}", c.only_in_q_tilde_cap_r, c.only_in_q_cap_r_tilde)
                .unwrap();
        }
    }

    if let Some(w) = &r.w {
        writeln!(o, "\nW = {{{}}}", w.members.join(", ")).unwrap();
        for row in &w.table {
            writeln!(
                o,
                "  {:<4} {:<3} coresolution {}; resolution {}",
                row.object,
                if row.member { "in" } else { "out" },
                search(&row.coresolution),
                search(&row.resolution)
            )
            .unwrap();
        }
    }

    if let Some(t) = &r.thickness {
        writeln!(
            o,
            "\nthickness: {} retract checks, {} sequences with dim A + dim C ≤ {}, {} violations",
            t.retract_checks,
            t.sequences,
            t.bound,
            t.retract_violations.len() + t.violations.len()
        )
        .unwrap();
        for v in t.retract_violations.iter().chain(&t.violations) {
            writeln!(o, "  {v}").unwrap();
        }
    }

    if let Some(i) = &r.identities {
        writeln!(o, "\nidentities: Q ∩ W = {:?}, Q̃ = {:?}; W ∩ R = {:?}, R̃ = {:?}", i.q_cap_w, i.q_tilde, i.w_cap_r, i.r_tilde)
            .unwrap();
        let split = i.retractions.iter().filter(|r| r.1).count();
        writeln!(o, "  retractions: {split}/{}", i.retractions.len()).unwrap();
    }

    if let Some(c) = &r.classification {
        writeln!(o, "\nmorphism: mono {}, epi {}", c.mono, c.epi).unwrap();
        writeln!(o, "  cofibration {}, trivial cofibration {}", c.cofibration, c.trivial_cofibration).unwrap();
        writeln!(o, "  fibration {}, trivial fibration {}", c.fibration, c.trivial_fibration).unwrap();
        let we = match c.weak_equivalence {
            Some(b) => b.to_string(),
            None => "not determined".into(),
        };
        writeln!(o, "  weak equivalence {we}").unwrap();
    }

    if let Some(v) = &r.verification {
        writeln!(o, "\nchecks").unwrap();
        for (name, c) in &v.checks {
            writeln!(o, "  {name:<22} {}", status(c)).unwrap();
        }
    }

    writeln!(o, "\nverdict: {}{}", r.verdict.summary, if r.verdict.inconclusive { " [inconclusive]" } else { "" })
        .unwrap();
    out
}
