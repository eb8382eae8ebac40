//! The three demonstration algebras over `F_2`.

use std::sync::Arc;

use crate::linmod::algebra::{validate_algebra, Algebra};

/// `F_2[x]/(x^2)`: a local Frobenius algebra with indecomposables `k` and `P`.
pub const LAMBDA2: &str = r#"{
  "prime": 2,
  "vertices": ["1"],
  "arrows": [{"name": "x", "from": "1", "to": "1"}],
  "relations": [[{"coeff": 1, "path": ["x", "x"]}]],
  "bounds": {"max_dim": 2, "max_iter": 8, "max_witness_dim": 6}
}"#;

/// Path algebra of `1 -> 2`.
pub const A2: &str = r#"{
  "prime": 2,
  "vertices": ["1", "2"],
  "arrows": [{"name": "a", "from": "1", "to": "2"}],
  "relations": [],
  "bounds": {"max_dim": 2, "max_iter": 8, "max_witness_dim": 6}
}"#;

/// `F_2[x]/(x^3)`: uniserial modules `M1`, `M2`, `M3`.
pub const N3: &str = r#"{
  "prime": 2,
  "vertices": ["1"],
  "arrows": [{"name": "x", "from": "1", "to": "1"}],
  "relations": [[{"coeff": 1, "path": ["x", "x", "x"]}]],
  "bounds": {"max_dim": 3, "max_iter": 8, "max_witness_dim": 6}
}"#;

pub const NAMES: [&str; 3] = ["lambda2", "a2", "n3"];

pub fn text(name: &str) -> Option<&'static str> {
    match name {
        "lambda2" => Some(LAMBDA2),
        "a2" => Some(A2),
        "n3" => Some(N3),
        _ => None,
    }
}

pub fn by_name(name: &str) -> Option<Arc<Algebra>> {
    text(name).map(|t| validate_algebra(t).expect("demo algebras are valid"))
}

pub fn lambda2() -> Arc<Algebra> {
    by_name("lambda2").unwrap()
}

pub fn a2() -> Arc<Algebra> {
    by_name("a2").unwrap()
}

pub fn n3() -> Arc<Algebra> {
    by_name("n3").unwrap()
}
