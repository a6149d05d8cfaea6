//! Command-line layer: expression parsing, reports, sweeps and the
//! acceptance checks behind `pgcl selftest`.

pub mod acceptance;
pub mod error;
pub mod manifest;
pub mod parse;
pub mod report;
pub mod selftest;
pub mod sweep;

pub use error::CliError;
