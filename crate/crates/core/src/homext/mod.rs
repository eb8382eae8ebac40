//! Homological machinery: presentations, syzygies, `Ext^1`/`Ext^2`, realizing
//! and transporting extensions, lifting, and the horseshoe construction.

pub mod ext;
pub mod horseshoe;
pub mod lift;
pub mod presentation;
pub mod square;
pub mod transport;

pub use ext::{baer_equivalence, ext1, ext_dim, realize_extension, ExtClass, ExtSpace};
pub use horseshoe::{horseshoe, ThreeByThree};
pub use lift::{lift_obstruction, lift_through_epi};
pub use presentation::{
    cosyzygy, injective_envelope, is_injective, is_projective, projective_cover, projective_presentation, syzygy,
    InjectiveEnvelope, ProjectiveCover, ProjectivePresentation,
};
pub use square::{bicartesian_check, Square};
pub use transport::{pullback_extension, pushout_extension};
