//! File formats, configuration loading, parallel coverage studies and the
//! `sddb` command-line interface on top of [`sddb_core`].

pub mod cli;
pub mod config;
pub mod coverage;
pub mod error;
pub mod io;

pub use error::{CliError, Result};
