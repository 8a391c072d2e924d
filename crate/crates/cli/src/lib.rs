//! Library side of the `treeshift` command-line tool: spec parsing, the
//! classification pipeline, report rendering, and DOT emission.

pub mod commands;
pub mod dot;
pub mod error;
pub mod report;
pub mod spec;

pub use commands::{classify_file, moments_file, verify_file, ClassifyOptions};
pub use error::CliError;
pub use spec::{parse_spec, ShiftSpec};
