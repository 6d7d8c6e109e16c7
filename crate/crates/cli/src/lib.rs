//! Batch front end over the `wernerq` library: discord and negativity curves
//! as deterministic CSV, a structured-vs-dense verification report, and a
//! wall-clock comparison of the two pipelines.
//!
//! The subcommands are plain functions over `io::Write`, so the unit tests
//! drive them in-process on byte buffers while `main` points them at stdout
//! or a file. Exit codes: 0 success, 1 failed verification or internal
//! failure, 2 invalid configuration, 3 dense-capacity violation.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use commands::{
    run_bench, run_discord_curve, run_negativity_curve, run_verify, BenchOptions, VerifyOptions,
};
pub use config::{CurveSample, Mode, SweepConfig};
pub use error::CliError;
