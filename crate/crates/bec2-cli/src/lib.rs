//! Library side of the `bec2` command: run configuration, experiment
//! runners and deterministic output writers. The binary in `main.rs` is a
//! thin argument-parsing shell over [`runner::run`].

pub mod config;
pub mod csvio;
pub mod runner;
pub mod svg;

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, config file or input data. Exit 2.
    InvalidConfig(String),
    /// Exact mode requested off the solvable manifold. Exit 3.
    OffManifold { residual: f64, scale: f64 },
    /// Eigensolver or other numerical failure. Exit 4.
    Numerical(String),
    /// Period information requested but the coefficient ratio admits no
    /// rational reconstruction; outputs are still written. Exit 5.
    Aperiodic,
    /// One or more verification criteria failed. Exit 1.
    VerifyFailed,
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::InvalidConfig(_) | CliError::Io(_) => 2,
            CliError::OffManifold { .. } => 3,
            CliError::Numerical(_) => 4,
            CliError::Aperiodic => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::OffManifold { residual, scale } => write!(
                f,
                "exact mode requires the solvable manifold: residual {residual:.3e} at scale {scale:.3e}"
            ),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            CliError::Aperiodic => write!(
                f,
                "coefficient ratio admits no rational reconstruction; markers written without a period"
            ),
            CliError::VerifyFailed => write!(f, "verification failed"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
