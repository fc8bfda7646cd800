use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the solver library and the benchmark harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("node index {index} out of range 1..={n_nodes}")]
    IndexOutOfRange { index: usize, n_nodes: usize },

    #[error("unsupported derivative order {0} (expected 1 or 2)")]
    UnsupportedOrder(u32),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("grid [{grid_a}, {grid_b}] does not span problem domain [{a}, {b}]")]
    DomainMismatch {
        grid_a: f64,
        grid_b: f64,
        a: f64,
        b: f64,
    },

    #[error("integration precondition violated: {0}")]
    Integration(String),

    #[error(
        "insufficient multistep history: need {needed} derivative evaluations, have {available}"
    )]
    InsufficientHistory { needed: usize, available: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("case did not complete (diverged at step {step})")]
    NotCompleted { step: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by user-supplied configuration (mapped to exit code 2 by the CLI).
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::UnknownMethod(_)
                | Error::UnknownProblem(_)
                | Error::InvalidGrid(_)
                | Error::DomainMismatch { .. }
        )
    }
}
