//! Command-line front end for `poincare-shell`: eigenvalue tables, bound
//! comparisons, eigenfunction profiles and the two oracle cross-checks.
//!
//! All numbers are written with 12 significant digits so that repeated runs
//! produce byte-identical files.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

pub use config::{parse_args, Command, OutputFormat, RunConfig};
pub use error::CliError;

/// Execute a resolved config, writing the report to `--out` or stdout.
pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let outcome = commands::execute(cfg)?;
    match &cfg.out {
        Some(path) => fs::write(path, outcome.body.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.body.as_bytes())?;
            stdout.flush()?;
        }
    }
    match outcome.failure {
        Some(msg) => Err(CliError::Validation(msg)),
        None => Ok(()),
    }
}

/// Full entry point: parse, run, report errors as JSON on stderr; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(args).and_then(|cfg| match cfg {
        Some(cfg) => run(&cfg),
        None => Ok(()),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
