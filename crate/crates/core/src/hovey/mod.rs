//! Compatibility of two cotorsion pairs, the class `W` by both descriptions,
//! thickness and identity checks, and certification of the Hovey triple.

pub mod compat;
pub mod report;
pub mod thickness;
pub mod triple;
pub mod wclass;

pub use compat::{check_compatibility, CompatibilityReport};
pub use report::{CheckStatus, VerificationReport};
pub use thickness::{verify_thickness, ThicknessReport};
pub use triple::{
    build_hovey_triple, classify_morphism, verify_identities, Evidence, HoveyTriple, IdentityReport, MorphismClass,
    PairClasses, Rejection, record_pair_checks, DEFAULT_THICKNESS_BOUND,
};
pub use wclass::{compute_w, in_w_coresolution, in_w_resolution, WClass, WMembership};
