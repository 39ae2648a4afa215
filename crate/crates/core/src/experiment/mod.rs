//! Seeded parameter sweeps over the power-law exponent.
//!
//! One cell is one realization at one exponent: grow, randomize, measure
//! degree and loop statistics, then run every enabled attack on its own copy.
//! Seeds come from [`derive_seed`], so any cell can be recomputed on its own.

mod config;
pub mod output;
mod runner;
mod seed;

use std::fmt;

use thiserror::Error;

pub use config::{ExperimentConfig, GammaGrid};
pub use output::write_outputs;
pub use runner::{
    run_cell, run_experiment, CellResult, CellSeeds, GammaSummary, MeanStd, ResultsTable,
};
pub use seed::{derive_seed, splitmix64, Stage};

/// A failed cell, with its coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CellError {
    pub gamma: f64,
    pub realization: usize,
    pub message: String,
}

impl fmt::Display for CellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell gamma={} realization={}: {}",
            self.gamma, self.realization, self.message
        )
    }
}

impl std::error::Error for CellError {}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{} cell(s) failed; first: {}", .0.len(), .0[0])]
    Cells(Vec<CellError>),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

impl From<CellError> for ExperimentError {
    fn from(e: CellError) -> Self {
        ExperimentError::Cells(vec![e])
    }
}
