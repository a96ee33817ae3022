//! JSON experiment configurations.

use std::path::Path;

use serde::de::DeserializeOwned;
use sddb_core::simharness::ExperimentConfig;

use crate::error::{CliError, Result};
use crate::io::read_text;

/// Deserializes JSON, naming the offending field path on data errors.
pub fn parse_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_data() {
            CliError::config(field, inner.to_string())
        } else {
            CliError::Syntax { path: path.to_path_buf(), message: inner.to_string() }
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse_json(&read_text(path)?, path)
}

/// Parses and validates an experiment configuration.
pub fn parse_experiment(text: &str, path: &Path) -> Result<ExperimentConfig> {
    let cfg: ExperimentConfig = parse_json(text, path)?;
    cfg.validate().map_err(|i| CliError::config(i.field, i.message))?;
    Ok(cfg)
}

pub fn read_experiment(path: &Path) -> Result<ExperimentConfig> {
    parse_experiment(&read_text(path)?, path)
}

/// The bundled desk-scale configuration (seed supplied on the command line).
pub const DESK_JSON: &str = include_str!("../configs/desk.json");
/// One realization with twenty replicates, for smoke runs.
pub const SMOKE_JSON: &str = include_str!("../configs/smoke.json");
