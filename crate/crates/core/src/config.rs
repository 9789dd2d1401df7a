//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "params": { "mu": [0.85, 0.9], "p": [0.1, 0.25] },
//!   "horizons": [1000, 5000],
//!   "runs": 20,
//!   "master_seed": 20251017,
//!   "policies": ["ec", "ae", "lcb", "ts"],
//!   "checkpoint_schedule": "log"
//! }
//! ```
//!
//! `checkpoint_schedule` is optional (default `"log"`); unknown keys are
//! rejected.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::ExperimentConfig;

pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(msg) => Error::config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let config: ExperimentConfig =
        serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))?;
    config.validate()?;
    Ok(config)
}
