//! Command-line driver: argument parsing, configuration resolution and
//! artifact output for the `maxrep` binary.

mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub use args::Cli;
pub use config::{
    AnalyzeConfig, BoundsConfig, EntropyConfig, FitConfig, OutputFormat, RunConfig, SimulateConfig, Units,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] maxrep::Error),

    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_capability() => EXIT_CAPABILITY,
            _ => EXIT_USAGE,
        }
    }
}

/// Outcome of a completed subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    /// Nothing could be computed because every request was unsupported.
    CapabilityOnly,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Violation => EXIT_VIOLATION,
            Status::CapabilityOnly => EXIT_CAPABILITY,
        }
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status, CliError> {
    let (config, out_dir) = config::resolve(cli.command, stderr)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers())
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {} workers: {e}", config.workers())))?;
    let mut sink = output::Sink::new(out_dir, stdout);
    let outcome = match pool.install(|| commands::dispatch(&config)) {
        Ok(outcome) => outcome,
        Err(e) => {
            sink.config(&config, stderr)?;
            return Err(e);
        }
    };
    sink.config(&outcome.config, stderr)?;
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    for artifact in &outcome.artifacts {
        sink.emit(artifact)?;
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(outcome.status),
    }
}
