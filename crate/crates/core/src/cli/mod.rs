//! Batch front end: problem files in, JSON summaries and CSV traces out.
//!
//! A problem file is strict TOML (unknown fields rejected) with a `version`,
//! an optional `seed`, optional `[output]` file names, and exactly one task
//! table. See [`schema::SCHEMA`] or run `abfix schema` for the full format.

pub mod problem;
pub mod runner;
pub mod schema;

pub use problem::ProblemFile;
pub use runner::{run, run_file, RunOptions, RunOutcome};
