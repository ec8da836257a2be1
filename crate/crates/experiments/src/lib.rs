//! Simulation campaigns for lagged random walk sampling, and the `lrw`
//! command line that drives them.

pub mod campaign;
pub mod config;
pub mod error;
pub mod table;

pub use campaign::{execute, run_campaign, CellFailures, Report};
pub use config::{parse_args, CampaignConfig, Experiment, GraphSource, NormMode};
pub use error::{ExperimentError, Result};
