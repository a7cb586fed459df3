//! Library side of the `supergeom` binary: suite configuration, the property
//! catalog, report assembly and the `compute` commands.

pub mod compute;
pub mod config;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use config::SuiteConfig;
pub use report::SuiteReport;

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const PROPERTY_FAILURE: u8 = 1;
    pub const CONFIG_ERROR: u8 = 2;
    pub const INPUT_ERROR: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Parse(#[from] supergeom::ParseError),
    #[error(transparent)]
    Domain(supergeom::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => exit::CONFIG_ERROR,
            CliError::Parse(_) | CliError::Domain(_) => exit::INPUT_ERROR,
        }
    }
}

impl From<supergeom::Error> for CliError {
    fn from(e: supergeom::Error) -> Self {
        match e {
            supergeom::Error::Parse(p) => CliError::Parse(p),
            other => CliError::Domain(other),
        }
    }
}
