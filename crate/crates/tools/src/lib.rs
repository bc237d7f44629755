//! IO companion for `quadrics-core`: JSON/CSV file formats, seeded instance
//! generators, and the experiment harness behind the `quadrics` binary.

pub mod experiment;
pub mod formats;
pub mod gen;

pub use experiment::{run_experiment, ExperimentReport, ExperimentRow};
pub use gen::{InstanceSpec, PlaneStrategy, QuadricKind};

/// Tool-level error: a message plus the exit-code class it maps to.
#[derive(Debug)]
pub enum ToolError {
    /// Bad input (malformed file, unusable flag value): exit code 2.
    Input(String),
    /// An invariant audit failed: exit code 1.
    Audit(String),
}

impl std::fmt::Display for ToolError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ToolError::Input(m) => write!(f, "input error: {m}"),
            ToolError::Audit(m) => write!(f, "audit failure: {m}"),
        }
    }
}

impl std::error::Error for ToolError {}

impl From<quadrics_core::Error> for ToolError {
    fn from(e: quadrics_core::Error) -> Self {
        ToolError::Input(e.to_string())
    }
}

impl From<std::io::Error> for ToolError {
    fn from(e: std::io::Error) -> Self {
        ToolError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for ToolError {
    fn from(e: serde_json::Error) -> Self {
        ToolError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, ToolError>;
