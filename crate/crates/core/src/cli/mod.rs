//! The `systolekit` command-line driver.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported as
//! `{"error": {"kind", "message"}}`), 2 on malformed input.

mod args;
mod commands;

pub use args::{parse_ratio, Cli, Command, ExtensionArgs, GlobalArgs, MeshArgs, PhiArgs, RunConfig};

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::Serialize;

/// Environment variable holding the log filter.
pub const LOG_ENV: &str = "SYSTOLEKIT_LOG";

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad files, unreadable JSON or unusable arguments.
    Malformed(String),
    Domain(crate::Error),
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.into())
            }
        }
    )*};
}

domain_from!(
    crate::Error,
    crate::mesh::MeshError,
    crate::metric::MetricError,
    crate::homotopy::HomotopyError,
    crate::cubical::CubicalError,
    crate::chains::ChainError,
    crate::regularity::RegularityError
);

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

fn init_logging() {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or(LOG_ENV, "warn")).try_init();
}

/// Runs the CLI on `argv`, writing artifacts to `stdout` (or `--out`) and
/// errors to `stdout` as JSON. Returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let result = commands::dispatch(&cli);
    let (code, kind, message) = match result {
        Ok(artifact) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, artifact.as_bytes()).map_err(|e| e.to_string()),
                None => stdout.write_all(artifact.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => return 0,
                Err(e) => (2, "MalformedInput", e),
            }
        }
        Err(Failure::Malformed(m)) => (2, "MalformedInput", m),
        Err(Failure::Domain(e)) => (1, e.kind(), e.to_string()),
    };
    log::error!("{kind}: {message}");
    let report = ErrorReport { error: ErrorBody { kind, message } };
    let _ = writeln!(stdout, "{}", serde_json::to_string(&report).unwrap_or_default());
    code
}

/// [`run_with`] on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut out, &mut err)
}
