//! Command-line front end for `normbound`.
//!
//! Subcommands: `norm`, `check`, `sweep`, `generate`, `verify`. Exit codes:
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success, or class membership "yes" |
//! | 1 | malformed input, invalid parameters, I/O failure |
//! | 2 | an exact answer was required but only an estimate is available |
//! | 3 | class membership "no" |
//! | 4 | class membership undetermined |
//! | 5 | `verify` found a failing property |

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod io;

pub use args::{Cli, Command};

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const NOT_EXACT: i32 = 2;
    pub const NO: i32 = 3;
    pub const UNDETERMINED: i32 = 4;
    pub const VERIFY_FAILED: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("no exact value available: {0}")]
    NotExact(String),
    #[error(transparent)]
    Core(#[from] normbound::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotExact(_) | CliError::Core(normbound::Error::DimensionTooLarge { .. }) => exit::NOT_EXACT,
            _ => exit::INPUT,
        }
    }
}

/// Parses `argv` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return exit::OK;
                }
                _ => exit::INPUT,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
