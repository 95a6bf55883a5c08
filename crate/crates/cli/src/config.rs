//! Optional TOML configuration. Every key mirrors a command-line flag, and a
//! flag given on the command line always wins.
//!
//! ```toml
//! jobs = 4
//! out = "db"
//! db_dir = "db"
//! bounds = "bounds.txt"
//! desk_scale = true
//! max_codes = 100000
//! verify = false
//! ```

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub db_dir: Option<PathBuf>,
    pub bounds: Option<PathBuf>,
    pub desk_scale: Option<bool>,
    pub max_codes: Option<usize>,
    pub verify: Option<bool>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}
