//! Execution of a resolved [`RunConfig`] and serialization of its results.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use bending_core::bounds::bounds_from_functionals;
use bending_core::optimize::{init_coefficients, minimize_from, DiscreteBending, IterationRecord};
use bending_core::surfaces::{catalog_fields, catalog_surfaces, hyperspherical_box};
use bending_core::{
    compute_functionals, make_field, make_surface, BoundsReport, Error, FieldSpec, FunctionalReport,
    OptimizationResult, ParameterGrid, SurfaceSpec,
};
use serde::Serialize;

use crate::config::{Command, ConfigError, Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum RunError {
    /// Bad input; exit code 2.
    Invalid(ConfigError),
    /// The computation ran but failed a check or hit a numerical failure; exit code 1.
    Failed(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Invalid(_) => 2,
            RunError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Invalid(e) => write!(f, "{e}"),
            RunError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Invalid(e)
    }
}

/// Core errors: bad descriptors are input errors under `key`, the rest are failures.
fn core_error(key: &str, e: Error) -> RunError {
    match e {
        Error::InvalidArgument(m) => RunError::Invalid(ConfigError::new(key, m)),
        other => RunError::Failed(other.to_string()),
    }
}

/// Inputs echoed into every report; excludes settings that cannot change results.
#[derive(Debug, Serialize)]
pub struct Inputs {
    pub surface: String,
    pub field: String,
    pub orientation: String,
    pub grid: [usize; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<OptimizerInputs>,
}

#[derive(Debug, Serialize)]
pub struct OptimizerInputs {
    pub seed: u64,
    pub smoothness: u32,
    pub max_iters: usize,
    pub tol_grad: f64,
    pub armijo: f64,
    pub backtrack: f64,
    pub initial_step: f64,
    pub max_backtracks: usize,
    pub preconditioner: bending_core::optimize::Preconditioner,
}

impl Inputs {
    fn from_config(c: &RunConfig) -> Self {
        let optimizer = (c.command == Command::Optimize).then(|| OptimizerInputs {
            seed: c.seed,
            smoothness: c.smoothness,
            max_iters: c.max_iters,
            tol_grad: c.tol_grad,
            armijo: c.armijo,
            backtrack: c.backtrack,
            initial_step: c.initial_step,
            max_backtracks: c.max_backtracks,
            preconditioner: c.preconditioner,
        });
        Self {
            surface: c.surface.to_string(),
            field: c.field.to_string(),
            orientation: c.orientation.to_string(),
            grid: c.grid,
            optimizer,
        }
    }
}

/// Run-dependent facts, kept apart from the reproducible payload.
#[derive(Debug, Serialize)]
pub struct Metadata {
    pub tool_version: &'static str,
    pub generated_unix_seconds: u64,
    pub threads: usize,
}

impl Metadata {
    fn now() -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION"),
            generated_unix_seconds: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            threads: rayon::current_num_threads(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<R> {
    pub schema_version: u32,
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Inputs>,
    pub report: R,
    pub metadata: Metadata,
}

#[derive(Debug, Serialize)]
pub struct Catalog {
    pub surfaces: Vec<String>,
    pub fields: Vec<String>,
    pub surface_kinds: Vec<&'static str>,
    pub field_kinds: Vec<&'static str>,
}

pub fn catalog() -> Catalog {
    Catalog {
        surfaces: catalog_surfaces().iter().map(ToString::to_string).collect(),
        fields: catalog_fields().iter().map(ToString::to_string).collect(),
        surface_kinds: SurfaceSpec::NAMES.to_vec(),
        field_kinds: FieldSpec::NAMES.to_vec(),
    }
}

pub fn compute(c: &RunConfig) -> Result<FunctionalReport, RunError> {
    let surface = make_surface(&c.surface).map_err(|e| core_error("surface", e))?.with_orientation(c.orientation);
    let field = make_field(&c.field).map_err(|e| core_error("field", e))?;
    let grid = ParameterGrid::new(c.grid, surface.parameter_box()).map_err(|e| core_error("grid", e))?;
    compute_functionals(&surface, &field, &grid).map_err(|e| core_error("field", e))
}

pub fn verify(c: &RunConfig) -> Result<BoundsReport, RunError> {
    bounds_from_functionals(compute(c)?).map_err(|e| core_error("field", e))
}

pub fn optimize(c: &RunConfig) -> Result<OptimizationResult, RunError> {
    let grid = ParameterGrid::new(c.grid, hyperspherical_box()).map_err(|e| core_error("grid", e))?;
    let objective = DiscreteBending::new(&grid).map_err(|e| core_error("grid", e))?;
    let start = init_coefficients(c.seed, c.smoothness, &grid).map_err(|e| core_error("seed", e))?;
    let mut result = minimize_from(start, &objective, &c.minimize_options()).map_err(|e| core_error("seed", e))?;
    result.seed = Some(c.seed);
    Ok(result)
}

/// JSON text of a report, newline-terminated.
pub fn to_json<R: Serialize>(c: &RunConfig, report: R) -> String {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command: c.command,
        inputs: (c.command != Command::Catalog).then(|| Inputs::from_config(c)),
        report,
        metadata: Metadata::now(),
    };
    let mut text = serde_json::to_string_pretty(&envelope).expect("reports serialize");
    text.push('\n');
    text
}

pub fn history_csv(history: &[IterationRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "B", "gradient_norm", "step_size"]).expect("in-memory write");
    for r in history {
        w.write_record([
            r.iteration.to_string(),
            r.bending.to_string(),
            r.gradient_norm.to_string(),
            r.step_size.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// `out/run.json` → `out/run.history.csv`.
pub fn history_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "run".into());
    output.with_file_name(format!("{stem}.history.csv"))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), RunError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| RunError::Invalid(ConfigError::new("output", format!("cannot write {}: {e}", path.display())))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| RunError::Failed(e.to_string()))
        }
    }
}

/// Runs the command, writes its outputs and returns a one-line summary.
///
/// A verify run that fails a bound still writes its report before returning
/// [`RunError::Failed`].
pub fn execute(c: &RunConfig) -> Result<String, RunError> {
    let output = c.output.as_deref();
    match c.command {
        Command::Catalog => {
            emit(output, &to_json(c, catalog()))?;
            Ok("catalog written".into())
        }
        Command::Compute => {
            let r = compute(c)?;
            let summary = format!(
                "B = {:.9}, E = {:.9}, deg = {} (Gauss-Kronecker {})",
                r.total_bending, r.energy, r.degree_eta2.rounded, r.degree_gauss_kronecker.rounded
            );
            emit(output, &to_json(c, r))?;
            Ok(summary)
        }
        Command::Verify => {
            let r = verify(c)?;
            let verdict = |pass: bool| if pass { "PASS" } else { "FAIL" };
            let summary = format!(
                "{}: deg = {}, B = {:.9}, degree bound {} (|deg| {}), energy bound {}, volume bound {}",
                verdict(r.pass),
                r.degree,
                r.functionals.total_bending,
                verdict(r.main_bound.pass),
                verdict(r.main_bound_abs.pass),
                verdict(r.energy_bound.pass),
                verdict(r.volume_bound.pass),
            );
            let pass = r.pass;
            emit(output, &to_json(c, r))?;
            if pass {
                Ok(summary)
            } else {
                Err(RunError::Failed(summary))
            }
        }
        Command::Optimize => {
            let r = optimize(c)?;
            let summary = format!(
                "{:?} after {} iterations: B = {:.9}, gradient norm {:.3e}",
                r.status, r.iterations, r.final_bending, r.final_gradient_norm
            );
            match c.format {
                Format::Csv => emit(output, &history_csv(&r.history))?,
                Format::Json => {
                    if let Some(path) = output {
                        emit(Some(&history_path(path)), &history_csv(&r.history))?;
                    }
                    emit(output, &to_json(c, r))?;
                }
            }
            Ok(summary)
        }
    }
}
