//! Experiment runner for the degenlab laboratory: configuration, reports, the
//! named experiments and the acceptance suite.
//!
//! Seeds: every random task derives its generator from
//! `child_seed(master, label, index)`, where the label names the experiment
//! and the task family, so results do not depend on the number of threads.

pub mod acceptance;
pub mod checks;
pub mod config;
pub mod experiments;
pub mod report;

pub use acceptance::{acceptance_suite, AcceptanceOptions, AcceptanceReport, CriterionResult};
pub use config::{ConfigError, ExperimentConfig, EXPERIMENTS};
pub use experiments::run;
pub use report::{Report, Verdict};

/// Exit codes of the binary.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
}
