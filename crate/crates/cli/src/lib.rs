//! Batch runner over the algebroid, period-lattice and finite-groupoid
//! crates. Every command turns a [`RunConfig`] into a [`Report`]; the
//! `weinstein` binary is a thin argument parser around [`run`].

pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod report;
pub mod suite;

pub use config::{RunConfig, Tolerances};
pub use error::CliError;
pub use report::{Provenance, Report};

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    commands::dispatch(config)
}
