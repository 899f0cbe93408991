//! Optional `key=value` configuration and output path resolution.
//!
//! Keys: `out_dir` (directory for relative output paths), `rotation_limit`
//! (rotation systems tried when a guest comes without one), `check`
//! (`true` runs the goodness checks after every embedding step).

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "UPG_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub out_dir: Option<PathBuf>,
    pub rotation_limit: u64,
    pub check: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { out_dir: None, rotation_limit: 1_000_000, check: false }
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => bail!("{key}: expected a boolean, got {value:?}"),
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected key=value", i + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                "rotation_limit" => {
                    cfg.rotation_limit = value.parse().with_context(|| format!("config line {}", i + 1))?
                }
                "check" => cfg.check = parse_bool(key, value)?,
                _ => bail!("config line {}: unknown key {key:?}", i + 1),
            }
        }
        Ok(cfg)
    }

    /// Reads `path` if given; `out_dir` falls back to the environment.
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Config::parse(&text)?
            }
            None => Config::default(),
        };
        if cfg.out_dir.is_none() {
            cfg.out_dir = std::env::var_os(OUT_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from);
        }
        Ok(cfg)
    }

    /// Relative output paths go under `out_dir` when one is set.
    pub fn output_path(&self, p: &Path) -> PathBuf {
        match &self.out_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }
}
