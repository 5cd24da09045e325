//! Verification harness for `ksum-core`: seeded sweeps over subspace pairs,
//! weight vectors and sets, reported as deterministic JSON or CSV.

pub mod cases;
pub mod checks;
pub mod cli;
pub mod config;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] ksum_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
