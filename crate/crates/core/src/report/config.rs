//! Run configuration: defaults, then `QFAUDIT_PRECISION`, then a TOML file,
//! then explicit flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PRECISION_ENV: &str = "QFAUDIT_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Tsv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Significant decimal digits for interval arithmetic.
    pub precision: u32,
    /// Largest `k` for ray class enumeration.
    pub kmax: u32,
    /// Upper end of the per-`n` inequality scan.
    pub scan_to: u64,
    pub census_bound: u64,
    pub corpus: Option<PathBuf>,
    pub format: Format,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 30,
            kmax: 5,
            scan_to: 100_000,
            census_bound: crate::fields::audit::DEFAULT_CENSUS_BOUND,
            corpus: None,
            format: Format::Json,
            output: None,
            timing: false,
        }
    }
}

/// Keys accepted in a config file; all optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub precision: Option<u32>,
    pub kmax: Option<u32>,
    pub scan_to: Option<u64>,
    pub census_bound: Option<u64>,
    pub corpus: Option<PathBuf>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

impl RunConfig {
    /// Defaults with the precision taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var(PRECISION_ENV) {
            cfg.precision = v.trim().parse().map_err(|_| Error::Parse(format!("{PRECISION_ENV}={v:?}")))?;
        }
        Ok(cfg)
    }

    pub fn merge_file(mut self, f: ConfigFile) -> Self {
        if let Some(v) = f.precision {
            self.precision = v;
        }
        if let Some(v) = f.kmax {
            self.kmax = v;
        }
        if let Some(v) = f.scan_to {
            self.scan_to = v;
        }
        if let Some(v) = f.census_bound {
            self.census_bound = v;
        }
        if f.corpus.is_some() {
            self.corpus = f.corpus;
        }
        if let Some(v) = f.format {
            self.format = v;
        }
        if f.output.is_some() {
            self.output = f.output;
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 15 || self.precision > 100 {
            return Err(Error::Parse(format!("precision {} outside [15, 100]", self.precision)));
        }
        if self.kmax == 0 || self.scan_to == 0 {
            return Err(Error::Parse("budgets must be positive".into()));
        }
        if self.census_bound < crate::fields::census::MIN_PRIME_BOUND {
            return Err(Error::Parse(format!("census bound {} below 50", self.census_bound)));
        }
        Ok(())
    }

    /// Decimal places shown for interval quantities.
    pub fn places(&self) -> usize {
        (self.precision as usize / 2).max(8)
    }
}
