//! Optional TOML file presetting command-line flags.
//!
//! ```toml
//! data_dir = "/srv/jcr"
//! year = 2005
//! seed = "JEvolEcon"
//! direction = "cited"
//! min_contrib = 0.01
//! cosine_threshold = 0.2
//! basis = "cited"
//! full_axes = false
//! local_graph = "similarity"
//! format = "table"
//! ```

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

/// Data directory used when neither `--data-dir` nor the config sets one.
pub const DATA_DIR_VAR: &str = "CITENV_DATA_DIR";
pub const CONFIG_VAR: &str = "CITENV_CONFIG";
/// Config file picked up from the data directory when no path is given.
pub const DEFAULT_CONFIG_NAME: &str = "citenv.toml";

#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub data_dir: Option<PathBuf>,
    pub year: Option<i32>,
    pub seed: Option<String>,
    pub direction: Option<String>,
    pub min_contrib: Option<f64>,
    pub cosine_threshold: Option<f64>,
    pub basis: Option<String>,
    pub full_axes: Option<bool>,
    pub local_graph: Option<String>,
    pub format: Option<String>,
}

impl Config {
    pub fn read(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Explicit path if given, otherwise `citenv.toml` in `data_dir` when
    /// that file exists, otherwise an empty config.
    pub fn locate(explicit: Option<&Path>, data_dir: Option<&Path>) -> Result<Config> {
        if let Some(path) = explicit {
            return Config::read(path);
        }
        match data_dir.map(|d| d.join(DEFAULT_CONFIG_NAME)) {
            Some(path) if path.is_file() => Config::read(&path),
            _ => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_key() {
        let c: Config = toml::from_str(
            r#"
            data_dir = "/tmp/jcr"
            year = 2005
            seed = "JEvolEcon"
            direction = "citing"
            min_contrib = 0.02
            cosine_threshold = 0.3
            basis = "both"
            full_axes = true
            local_graph = "citations"
            format = "json"
            "#,
        )
        .unwrap();
        assert_eq!(c.year, Some(2005));
        assert_eq!(c.seed.as_deref(), Some("JEvolEcon"));
        assert_eq!(c.cosine_threshold, Some(0.3));
        assert_eq!(c.full_axes, Some(true));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<Config>("sede = \"x\"").is_err());
    }
}
