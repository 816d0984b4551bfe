//! Report front end for the eta/zeta tail laboratory: flag parsing,
//! config resolution, command drivers and text/CSV/JSON rendering.

pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod report;

pub use config::{OutputFormat, RunConfig};
pub use error::{CliError, Result};
pub use report::Report;
