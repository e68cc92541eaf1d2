//! Experiment runner behind the `unitfield` binary.

pub mod catalog;
pub mod config;
pub mod output;

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use unitfield_core::verify::verify;
use unitfield_core::{Error, Report};

pub use config::{Experiment, ExperimentConfig};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const BAD_CONFIG: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => exit::BAD_CONFIG,
            CliError::Numerical(_) => exit::NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(m) => CliError::Config(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

pub fn run_experiment(exp: &Experiment) -> Result<Report, CliError> {
    Ok(verify(&exp.surface, exp.field.as_ref(), &exp.resolutions, exp.suite)?)
}

/// Exit status for a finished report: non-convergence outranks a failing
/// check, since a failed check on an unconverged grid says little.
pub fn report_status(report: &Report) -> i32 {
    if !report.converged() {
        exit::NUMERICAL
    } else if !report.all_pass() {
        exit::CHECK_FAILED
    } else {
        exit::OK
    }
}

/// Writes the JSON and CSV files named in `config`, if any.
pub fn write_outputs(config: &ExperimentConfig, report: &Report) -> Result<(), CliError> {
    fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
        File::create(path).map(BufWriter::new).map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
    }
    if let Some(p) = &config.out_json {
        output::write_json(report, create(p)?)?;
    }
    if let Some(p) = &config.out_csv {
        output::write_csv(report, create(p)?)?;
    }
    Ok(())
}
