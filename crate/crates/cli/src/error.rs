use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// `observables --check` found a violated invariant.
    pub const CHECK_FAILED: i32 = 1;
    /// Bad configuration or command-line usage.
    pub const CONFIG: i32 = 2;
    /// Failure while running: numerics, I/O, corrupt input files.
    pub const RUNTIME: i32 = 3;
}

/// A configuration problem, located by `section.key` (or `line N` for
/// syntax errors, or a file path when the file itself is unusable).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{key}: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { key: key.into(), message: message.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("error: {0}")]
    Runtime(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => exit::CONFIG,
            CliError::Runtime(_) => exit::RUNTIME,
            CliError::CheckFailed(_) => exit::CHECK_FAILED,
        }
    }

    pub fn runtime(e: impl fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<wavelab::Error> for CliError {
    fn from(e: wavelab::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
