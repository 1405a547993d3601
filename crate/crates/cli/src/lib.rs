//! Command-line sweeps over the exact XX chain solution.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on numerical, size or
//! I/O failures (including failed `validate` checks).

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
mod validate;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{Axis, Cli, Command, Format, Range, RunConfig};
pub use emit::{Cell, Document, Record, Table};
pub use error::CliError;

pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> error::Result<()> {
    let cfg = RunConfig::from_cli(cli)?;
    let report = commands::execute(&cfg)?;
    if let Some(table) = &report.table {
        emit::emit(&cfg, table)?;
    }
    for note in &report.notes {
        eprintln!("{note}");
    }
    if report.failures > 0 {
        return Err(CliError::ValidationFailed(report.failures));
    }
    Ok(())
}
