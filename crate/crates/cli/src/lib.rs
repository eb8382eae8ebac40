//! Library side of the `hovey-forge` command: spec parsing, command
//! execution, and report emission.

pub mod emit;
pub mod report;
pub mod run;
pub mod spec;

pub use emit::{emit_report, parse_report, Format};
pub use report::Report;
pub use run::{run, Command};
pub use spec::{demo_spec, load_spec, parse_spec, Overrides, RunSpec};
