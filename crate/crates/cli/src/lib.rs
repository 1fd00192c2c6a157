//! Command-line front end for `wavelab`: configuration files, output
//! formats and subcommands.

pub mod commands;
pub mod config;
pub mod error;
pub mod ini;
pub mod io;

use std::ffi::OsString;

use clap::Parser;

pub use commands::Cli;
pub use config::RunConfig;
pub use error::{exit, CliError, ConfigError};

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::run(cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("wavelab: {e}");
            e.exit_code()
        }
    }
}
