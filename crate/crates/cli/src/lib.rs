//! Document formats, command dispatch and verdict rendering for `lra`.

pub mod commands;
pub mod doc;
pub mod error;
pub mod verdict;

pub use commands::{run, step_cap_from_env, Cli, Outcome};
pub use doc::{Document, Kind};
pub use error::{CliError, CliResult, PolySyntax};
pub use verdict::{Format, VerdictReport};
