//! Run configuration: defaults, `key = value` config files and flag overrides.
//!
//! Every source is first reduced to a map of raw strings, merged with the
//! precedence flags > config file > defaults, and only then parsed, so a bad
//! value is reported under its key no matter where it came from.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use bending_core::optimize::{MinimizeOptions, Preconditioner};
use bending_core::{FieldSpec, Orientation, SurfaceSpec};
use serde::{Deserialize, Serialize};

/// Keys accepted in config files, in canonical order.
pub const KEYS: [&str; 16] = [
    "surface",
    "field",
    "orientation",
    "grid",
    "seed",
    "smoothness",
    "max_iters",
    "tol_grad",
    "armijo",
    "backtrack",
    "initial_step",
    "max_backtracks",
    "preconditioner",
    "output",
    "format",
    "threads",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self { key: key.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.key, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Compute,
    Verify,
    Optimize,
    Catalog,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Compute => "compute",
            Command::Verify => "verify",
            Command::Optimize => "optimize",
            Command::Catalog => "catalog",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("expected `json` or `csv`, got `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Descriptor strings such as `sphere:r=1` in serialized form.
mod descriptor {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(with = "descriptor")]
    pub surface: SurfaceSpec,
    #[serde(with = "descriptor")]
    pub field: FieldSpec,
    pub orientation: Orientation,
    pub grid: [usize; 3],
    pub seed: u64,
    pub smoothness: u32,
    pub max_iters: usize,
    pub tol_grad: f64,
    pub armijo: f64,
    pub backtrack: f64,
    pub initial_step: f64,
    pub max_backtracks: usize,
    pub preconditioner: Preconditioner,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        let opts = MinimizeOptions::default();
        Self {
            command,
            surface: SurfaceSpec::Sphere { radius: 1.0 },
            field: FieldSpec::Hopf,
            orientation: Orientation::Standard,
            grid: [24, 24, 48],
            seed: 0,
            smoothness: 2,
            max_iters: opts.max_iters,
            tol_grad: opts.tol_grad,
            armijo: opts.armijo,
            backtrack: opts.backtrack,
            initial_step: opts.initial_step,
            max_backtracks: opts.max_backtracks,
            preconditioner: opts.preconditioner,
            output: None,
            format: Format::Json,
            threads: None,
        }
    }

    /// Merges `layers` in increasing precedence over the defaults.
    pub fn resolve(command: Command, layers: &[&BTreeMap<String, String>]) -> Result<Self, ConfigError> {
        let mut merged = BTreeMap::new();
        for layer in layers {
            for (k, v) in layer.iter() {
                merged.insert(k.clone(), v.clone());
            }
        }
        let mut config = Self::defaults(command);
        for (key, value) in &merged {
            config.set(key, value)?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Parses and assigns one raw value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        let err = |m: String| ConfigError::new(key, m);
        match key {
            "surface" => self.surface = value.parse().map_err(|e| err(format!("{e}")))?,
            "field" => self.field = value.parse().map_err(|e| err(format!("{e}")))?,
            "orientation" => self.orientation = value.parse().map_err(|e| err(format!("{e}")))?,
            "grid" => self.grid = parse_grid(value).map_err(err)?,
            "seed" => self.seed = parse_number(value).map_err(err)?,
            "smoothness" => self.smoothness = parse_number(value).map_err(err)?,
            "max_iters" => self.max_iters = parse_number(value).map_err(err)?,
            "tol_grad" => self.tol_grad = parse_number(value).map_err(err)?,
            "armijo" => self.armijo = parse_number(value).map_err(err)?,
            "backtrack" => self.backtrack = parse_number(value).map_err(err)?,
            "initial_step" => self.initial_step = parse_number(value).map_err(err)?,
            "max_backtracks" => self.max_backtracks = parse_number(value).map_err(err)?,
            "preconditioner" => {
                self.preconditioner = match value {
                    "sobolev" => Preconditioner::Sobolev,
                    "identity" => Preconditioner::Identity,
                    other => return Err(err(format!("expected `sobolev` or `identity`, got `{other}`"))),
                }
            }
            "output" => self.output = if value.is_empty() { None } else { Some(PathBuf::from(value)) },
            "format" => self.format = value.parse().map_err(err)?,
            "threads" => self.threads = Some(parse_number(value).map_err(err)?),
            other => return Err(ConfigError::new(other, format!("unknown key (expected one of {})", KEYS.join(", ")))),
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if let Some(bad) = self.grid.iter().find(|&&n| n < 4) {
            return Err(ConfigError::new("grid", format!("every resolution must be at least 4, got {bad}")));
        }
        if self.max_iters < 1 {
            return Err(ConfigError::new("max_iters", "must be at least 1"));
        }
        if !(self.tol_grad > 0.0 && self.tol_grad.is_finite()) {
            return Err(ConfigError::new("tol_grad", "must be positive"));
        }
        if !(self.armijo > 0.0 && self.armijo < 1.0) {
            return Err(ConfigError::new("armijo", "must lie in (0, 1)"));
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return Err(ConfigError::new("backtrack", "must lie in (0, 1)"));
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return Err(ConfigError::new("initial_step", "must be positive"));
        }
        if self.smoothness == 0 {
            return Err(ConfigError::new("smoothness", "must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(ConfigError::new("threads", "must be at least 1"));
        }
        if self.format == Format::Csv && self.command != Command::Optimize {
            return Err(ConfigError::new("format", "csv output is only available for `optimize` histories"));
        }
        if self.command == Command::Optimize && self.surface != (SurfaceSpec::Sphere { radius: 1.0 }) {
            return Err(ConfigError::new("surface", "optimize runs on the unit sphere only (sphere:r=1)"));
        }
        Ok(())
    }

    pub fn minimize_options(&self) -> MinimizeOptions {
        MinimizeOptions {
            max_iters: self.max_iters,
            tol_grad: self.tol_grad,
            armijo: self.armijo,
            backtrack: self.backtrack,
            initial_step: self.initial_step,
            max_backtracks: self.max_backtracks,
            preconditioner: self.preconditioner,
        }
    }

    /// The configuration as a config file that [`parse_config_file`] reads back.
    pub fn to_config_file(&self) -> String {
        let mut out = String::new();
        for key in KEYS {
            let value = match key {
                "surface" => self.surface.to_string(),
                "field" => self.field.to_string(),
                "orientation" => self.orientation.to_string(),
                "grid" => format!("{},{},{}", self.grid[0], self.grid[1], self.grid[2]),
                "seed" => self.seed.to_string(),
                "smoothness" => self.smoothness.to_string(),
                "max_iters" => self.max_iters.to_string(),
                "tol_grad" => format!("{:e}", self.tol_grad),
                "armijo" => format!("{:e}", self.armijo),
                "backtrack" => self.backtrack.to_string(),
                "initial_step" => self.initial_step.to_string(),
                "max_backtracks" => self.max_backtracks.to_string(),
                "preconditioner" => match self.preconditioner {
                    Preconditioner::Sobolev => "sobolev".into(),
                    Preconditioner::Identity => "identity".into(),
                },
                "output" => match &self.output {
                    Some(p) => p.display().to_string(),
                    None => continue,
                },
                "format" => self.format.to_string(),
                "threads" => match self.threads {
                    Some(n) => n.to_string(),
                    None => continue,
                },
                _ => unreachable!(),
            };
            out.push_str(&format!("{key} = {value}\n"));
        }
        out
    }
}

fn parse_number<T: FromStr>(value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse `{value}` as a number"))
}

fn parse_grid(value: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated resolutions, got `{value}`"));
    }
    let mut grid = [0; 3];
    for (slot, part) in grid.iter_mut().zip(parts) {
        *slot = parse_number(part)?;
    }
    Ok(grid)
}

/// Reads `key = value` lines. Blank lines and lines starting with `#` are
/// ignored; keys must be known and appear at most once.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(format!("line {}", n + 1), format!("expected `key = value`, got `{line}`")));
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(key, format!("unknown key on line {} (expected one of {})", n + 1, KEYS.join(", "))));
        }
        if out.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(ConfigError::new(key, format!("repeated on line {}", n + 1)));
        }
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
    parse_config_file(&text)
}
