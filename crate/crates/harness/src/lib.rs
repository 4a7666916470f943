//! Experiment orchestration: reproducible configs, the lambda-sweep
//! experiment, exact Fubini verification runs, graph/product estimates,
//! energy profiles, and machine-readable reports.

pub mod config;
pub mod experiments;
pub mod report;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] dimlab_core::Error),

    #[error("sandwich check violated: {0}")]
    SandwichViolated(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code: 2 for a violated inequality assertion, 1 for
    /// usage/config/runtime errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::SandwichViolated(_) => 2,
            HarnessError::Core(dimlab_core::Error::ChainViolated(_)) => 2,
            _ => 1,
        }
    }
}
