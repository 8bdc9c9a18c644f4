//! Limits and worker count.
//!
//! Later sources win: built-in defaults, a TOML file, the
//! `HAZARDKIT_MAX_VARS` environment variable (brute-force bound only), then
//! command-line flags.
//!
//! ```toml
//! max_vars = 14        # minterm/maxterm enumeration
//! brute_max_vars = 13  # 3^n scans
//! jobs = 4
//! ```

use std::path::Path;

use hazardkit_core::detect::DEFAULT_BRUTE_FORCE_BOUND;
use hazardkit_core::implicants::DEFAULT_ENUMERATION_BOUND;
use serde::Deserialize;

pub const ENV_MAX_VARS: &str = "HAZARDKIT_MAX_VARS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_vars: usize,
    pub brute_max_vars: usize,
    /// `None` lets rayon decide.
    pub jobs: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_vars: DEFAULT_ENUMERATION_BOUND,
            brute_max_vars: DEFAULT_BRUTE_FORCE_BOUND,
            jobs: None,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    max_vars: Option<usize>,
    brute_max_vars: Option<usize>,
    jobs: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad config file {path}: {source}")]
    Toml {
        path: String,
        source: toml::de::Error,
    },
    #[error("{ENV_MAX_VARS}={0:?} is not a number")]
    Env(String),
}

impl Config {
    pub fn apply_toml(&mut self, text: &str, path: &str) -> Result<(), ConfigError> {
        let file: FileConfig = toml::from_str(text).map_err(|source| ConfigError::Toml {
            path: path.to_string(),
            source,
        })?;
        self.max_vars = file.max_vars.unwrap_or(self.max_vars);
        self.brute_max_vars = file.brute_max_vars.unwrap_or(self.brute_max_vars);
        self.jobs = file.jobs.or(self.jobs);
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: shown.clone(),
            source,
        })?;
        self.apply_toml(&text, &shown)
    }

    pub fn apply_env_value(&mut self, value: Option<&str>) -> Result<(), ConfigError> {
        if let Some(v) = value {
            self.brute_max_vars = v
                .trim()
                .parse()
                .map_err(|_| ConfigError::Env(v.to_string()))?;
        }
        Ok(())
    }

    /// Defaults, then `file`, then the environment.
    pub fn load(file: Option<&Path>) -> Result<Self, ConfigError> {
        let mut c = Config::default();
        if let Some(p) = file {
            c.apply_file(p)?;
        }
        c.apply_env_value(std::env::var(ENV_MAX_VARS).ok().as_deref())?;
        Ok(c)
    }
}
