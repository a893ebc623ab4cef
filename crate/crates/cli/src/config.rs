//! Settings merged from an optional JSON file and command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Contents of `--config`; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub budget: Option<u64>,
    pub field_budget: Option<u64>,
    pub order: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
}

#[derive(Debug, Default, clap::Args)]
pub struct Overrides {
    /// JSON config file; flags take precedence over its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Largest q^(nd) for class enumeration
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest field size for exhaustive scans
    #[arg(long, global = true)]
    pub field_budget: Option<u64>,
    /// Series truncation order for the verify suites
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (0 = one per core, 1 = sequential)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub budget: u64,
    pub field_budget: u64,
    pub order: usize,
    pub cache_dir: PathBuf,
    pub workers: usize,
    pub format: Format,
}

impl Config {
    pub fn resolve(flags: &Overrides) -> Result<Config, String> {
        let file = match &flags.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let cfg = Config {
            budget: flags.budget.or(file.budget).unwrap_or(hecketrace::hecke::DEFAULT_HECKE_BUDGET),
            field_budget: flags.field_budget.or(file.field_budget).unwrap_or(hecketrace::ffield::DEFAULT_FIELD_BUDGET),
            order: flags.order.or(file.order).unwrap_or(20),
            cache_dir: flags.cache_dir.clone().or(file.cache_dir).unwrap_or_else(|| PathBuf::from(".hecketrace-cache")),
            workers: flags.workers.or(file.workers).unwrap_or(0),
            format: flags.format.or(file.format).unwrap_or(Format::Json),
        };
        if cfg.budget == 0 || cfg.field_budget == 0 || cfg.order == 0 {
            return Err("budgets and the truncation order must be positive".into());
        }
        Ok(cfg)
    }
}

fn read_file(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}
