use std::fmt;
use std::path::{Path, PathBuf};

use mspace_core::bohr_model::Constants;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Units {
    Natural,
    Ev,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub units: Units,
    pub constants_file: Option<PathBuf>,
    pub constants: Constants,
    pub format: Format,
    pub seed: u64,
    pub panels: usize,
    pub h: f64,
    pub workers: u32,
    pub out: Option<PathBuf>,
    pub verbose: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: Units::Natural,
            constants_file: None,
            constants: Constants::default(),
            format: Format::Csv,
            seed: 42,
            panels: 10_000,
            h: 1e-3,
            workers: 4,
            out: None,
            verbose: false,
        }
    }
}

impl RunConfig {
    /// Multiplier from natural energy units (rest mass = 1) to the output units.
    pub fn energy_scale(&self) -> f64 {
        match self.units {
            Units::Natural => 1.0,
            Units::Ev => self.constants.electron_mass_ev,
        }
    }

    pub fn provenance(&self) -> String {
        let source = match &self.constants_file {
            Some(p) => p.display().to_string(),
            None => "builtin CODATA 2018".to_string(),
        };
        format!(
            "# constants: alpha={} electron_mass_ev={} source={} units={}",
            self.constants.alpha, self.constants.electron_mass_ev, source, self.units
        )
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Natural => "natural",
            Self::Ev => "ev",
        })
    }
}

/// Parses `key = value` lines; `#` starts a comment. Keys not present keep
/// their built-in values.
pub fn parse_constants(text: &str) -> Result<Constants, CliError> {
    let mut c = Constants::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Constants { line: i + 1, msg };
        let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
        let value: f64 = value.trim().parse().map_err(|_| bad(format!("not a number: {:?}", value.trim())))?;
        if !(value > 0.0) || !value.is_finite() {
            return Err(bad(format!("value must be positive, got {value}")));
        }
        match key.trim() {
            "alpha" => c.alpha = value,
            "electron_mass_ev" => c.electron_mass_ev = value,
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    Ok(c)
}

pub fn load_constants(path: &Path) -> Result<Constants, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    parse_constants(&text)
}
