//! The report every command produces. All fields round-trip through JSON.

use hovey_core::classcat::{Catalog, SearchStatus, WitnessSearch};
use hovey_core::hovey::{CheckStatus, IdentityReport, MorphismClass, ThicknessReport, VerificationReport};
use hovey_core::linmod::{ModuleSpec, SesSpec};
use serde::{Deserialize, Serialize};

use crate::spec::SpecEcho;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub spec: SpecEcho,
    pub catalog: CatalogSection,
    pub ext_table: Option<ExtTable>,
    pub pairs: Vec<PairSection>,
    pub compatibility: Option<CompatibilitySection>,
    pub w: Option<WSection>,
    pub thickness: Option<ThicknessReport>,
    pub identities: Option<IdentityReport>,
    pub classification: Option<MorphismClass>,
    pub verification: Option<VerificationReport>,
    pub verdict: Verdict,
    /// Deterministic work counters in place of wall-clock time.
    pub timing: Work,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSection {
    pub entries: Vec<CatalogRow>,
    pub truncated: bool,
    pub undecided: bool,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub id: usize,
    pub name: String,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub projective: bool,
    pub injective: bool,
    pub provenance: Vec<String>,
    pub module: ModuleSpec,
}

impl CatalogSection {
    pub fn from_catalog(cat: &Catalog) -> Self {
        CatalogSection {
            entries: cat
                .entries()
                .iter()
                .map(|e| CatalogRow {
                    id: e.id,
                    name: e.name.clone(),
                    dims: e.module.dims().to_vec(),
                    total_dim: e.module.total_dim(),
                    projective: e.projective,
                    injective: e.injective,
                    provenance: e.provenance.iter().map(|p| p.to_string()).collect(),
                    module: e.module.to_spec(),
                })
                .collect(),
            truncated: cat.truncated,
            undecided: cat.undecided,
            rounds: cat.rounds,
        }
    }
}

/// `ext1[i][j] = dim Ext^1(X_i, X_j)`, likewise `ext2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub names: Vec<String>,
    pub ext1: Vec<Vec<usize>>,
    pub ext2: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub status: String,
    pub far_end: Vec<String>,
    pub candidates_tried: usize,
    pub bound: usize,
    pub capped: bool,
    pub undecided: bool,
    pub witness: Option<SesSpec>,
}

pub fn status_name(s: SearchStatus) -> &'static str {
    match s {
        SearchStatus::Found => "found",
        SearchStatus::NotFoundWithinBound => "not_found_within_bound",
        SearchStatus::Exhausted => "exhausted",
        SearchStatus::Obstructed => "obstructed",
    }
}

impl SearchRow {
    pub fn from_search(s: &WitnessSearch, cat: &Catalog) -> Self {
        SearchRow {
            status: status_name(s.status).into(),
            far_end: s.far_end.iter().map(|&i| cat.name(i).to_string()).collect(),
            candidates_tried: s.candidates_tried,
            bound: s.bound,
            capped: s.capped,
            undecided: s.undecided,
            witness: s.witness.as_ref().map(|w| w.to_spec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximationRow {
    pub object: String,
    pub preenvelope: SearchRow,
    pub precover: SearchRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSection {
    pub label: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub cotorsion: CheckStatus,
    pub hereditary: CheckStatus,
    pub complete: CheckStatus,
    pub ext2_violations: Vec<[String; 2]>,
    pub spot_check_sequences: usize,
    pub approximations: Vec<ApproximationRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilitySection {
    pub condition1: bool,
    pub condition2: bool,
    pub r_tilde_outside_r: Vec<String>,
    pub q_tilde_outside_q: Vec<String>,
    pub only_in_q_tilde_cap_r: Vec<String>,
    pub only_in_q_cap_r_tilde: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WRow {
    pub object: String,
    pub member: bool,
    pub coresolution: SearchRow,
    pub resolution: SearchRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSection {
    pub members: Vec<String>,
    pub table: Vec<WRow>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// Every requested verification passed.
    pub passed: bool,
    /// Some entry is bound-qualified or undecided.
    pub inconclusive: bool,
    /// `build-hovey`/`classify` only: a triple was certified.
    pub certified: Option<bool>,
    pub summary: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Work {
    pub catalog_rounds: usize,
    pub witness_candidates: usize,
    pub thickness_sequences: usize,
}

impl Report {
    /// Exit status: 0 only when everything passed and, unless allowed,
    /// nothing was inconclusive.
    pub fn exit_code(&self, allow_inconclusive: bool) -> i32 {
        if self.verdict.passed && (allow_inconclusive || !self.verdict.inconclusive) {
            0
        } else {
            1
        }
    }
}
