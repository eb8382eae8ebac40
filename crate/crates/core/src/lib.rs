//! Exact computations in categories of finite-dimensional quiver representations
//! over prime fields: Ext groups, cotorsion pairs, and the thick class `W` of
//! the Hovey triple induced by two compatible complete hereditary cotorsion
//! pairs.

pub mod classcat;
pub mod demos;
pub mod error;
pub mod homext;
pub mod hovey;
pub mod linmod;

pub use error::{Error, ExactnessError, Result};
