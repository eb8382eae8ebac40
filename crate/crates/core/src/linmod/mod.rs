//! Exact linear algebra over prime fields and the category of finite-dimensional
//! representations of a bound quiver.

pub mod algebra;
pub mod field;
pub mod iso;
pub mod mat;
pub mod module;
pub mod morphism;
pub mod ops;
pub mod ses;

pub use algebra::{validate_algebra, Algebra, AlgebraSpec, Bounds, BoundsSpec};
pub use field::PrimeField;
pub use iso::{decompose, decompose_with, is_isomorphic, is_isomorphic_with, Budget, Decomposition, IsoOutcome};
pub use mat::{linear_solve, Mat};
pub use module::{validate_module, Module, ModuleSpec};
pub use morphism::{hom_basis, HomSystem, Morphism, MorphismSpec};
pub use ops::{
    cokernel_of, direct_sum, direct_sum_all, direct_sum_over, factor_through_cokernel, factor_through_mono,
    image_of, kernel_of, pullback, pushout, split_epi_section, split_mono_retraction, DirectSum,
};
pub use ses::{ses_validate, SesSpec, ShortExactSequence};
