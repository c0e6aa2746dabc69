//! Command-line grammar.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Command;

#[derive(Debug, Parser)]
#[command(name = "bending", version, about = "Total bending, energy and degree bounds of unit vector fields on hypersurfaces of R⁴")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CliCommand {
    /// Evaluate every functional of one (surface, field) pair.
    Compute,
    /// Evaluate the functionals and check the degree, energy and volume bounds.
    Verify,
    /// Minimize the total bending on the unit 3-sphere from a seeded start.
    Optimize,
    /// List the catalog surfaces and fields.
    Catalog,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Self {
        match c {
            CliCommand::Compute => Command::Compute,
            CliCommand::Verify => Command::Verify,
            CliCommand::Optimize => Command::Optimize,
            CliCommand::Catalog => Command::Catalog,
        }
    }
}

/// Values stay raw strings here so that parse errors are reported by key,
/// identically for flags and config files.
#[derive(Debug, Default, Args)]
pub struct Options {
    /// Surface descriptor, e.g. `sphere:r=1`, `ellipsoid:2,1,1,1`, `bumpy_sphere:eps=0.1,mode=1`.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Field descriptor, e.g. `hopf`, `perturbed_hopf:0.3`, `random_smooth:seed=0,smoothness=2`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Grid resolution `n1,n2,n3`.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// `standard` or `flipped` normal.
    #[arg(long, global = true)]
    pub orientation: Option<String>,
    /// Seed of the optimizer's initial field.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub seed: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub max_iters: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol_grad: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// `json` or `csv` (csv: optimizer history only).
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Config file of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub threads: Option<String>,
}

impl Options {
    /// The flags that were given, keyed like config-file entries.
    pub fn overrides(&self) -> BTreeMap<String, String> {
        let pairs = [
            ("surface", &self.surface),
            ("field", &self.field),
            ("grid", &self.grid),
            ("orientation", &self.orientation),
            ("seed", &self.seed),
            ("max_iters", &self.max_iters),
            ("tol_grad", &self.tol_grad),
            ("output", &self.output),
            ("format", &self.format),
            ("threads", &self.threads),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}
