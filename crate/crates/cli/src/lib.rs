//! Experiment orchestration for the smooth-number toolkit: configuration,
//! report emission, count caching, and the experiment implementations behind
//! the `friable` binary.

pub mod cache;
pub mod config;
pub mod experiments;
pub mod report;

pub use config::{Experiment, ExperimentConfig, ReportFormat};
pub use experiments::{run, verify_theorem_main};
pub use report::EstimateReport;
