//! Experiment harness for subsampled Metropolis–Hastings: synthetic data
//! generation, CSV ingestion, config-driven replication grids and table /
//! plot-data output.

pub mod config;
pub mod data;
pub mod error;
pub mod experiment;
pub mod seeds;

pub use config::ExperimentConfig;
pub use error::{HarnessError, Result};
pub use experiment::{emit_mse_curve, execute, load_bundle, run_experiment, summarize, ResultBundle};
