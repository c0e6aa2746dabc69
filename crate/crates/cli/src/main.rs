use std::process::ExitCode;

use bending_cli::cli::Cli;
use bending_cli::config::{read_config_file, RunConfig};
use bending_cli::run::{execute, RunError};
use clap::Parser;

fn run(cli: Cli) -> Result<String, RunError> {
    let file = match &cli.options.config {
        Some(path) => read_config_file(path)?,
        None => Default::default(),
    };
    let flags = cli.options.overrides();
    let config = RunConfig::resolve(cli.command.into(), &[&file, &flags])?;
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| RunError::Failed(format!("cannot start thread pool: {e}")))?;
    }
    execute(&config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => {
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bending: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
