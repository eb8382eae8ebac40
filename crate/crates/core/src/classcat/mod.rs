//! Finite catalogs of indecomposables and cotorsion pairs described over them.

pub mod catalog;
pub mod class;
pub mod pair;
pub mod witness;

pub use catalog::{build_catalog, build_catalog_with, Catalog, CatalogEntry, Identification, Provenance};
pub use class::{class_membership, left_orth, right_orth, Decision, Membership, ObjectClass};
pub use pair::{
    verify_complete, verify_cotorsion_pair, verify_hereditary, CompletenessEntry, CotorsionPair, HeredityReport,
    PairReport,
};
pub use witness::{
    in_integer_span, multisets, search_coresolution, search_resolution, special_precover, special_preenvelope, SearchStatus,
    WitnessSearch, WITNESS_CLASS_CAP,
};
