//! Monte Carlo experiments and the statistics behind them.

pub mod config;
pub mod experiments;
pub mod runner;
pub mod stats;
pub mod studies;

pub use config::{Ensemble, ExperimentConfig, SCHEMA_VERSION};
pub use experiments::{experiment_registry, select_experiments, Check, Experiment, ExperimentReport, Table};
pub use stats::{fit_power_law, ks_two_sample, kolmogorov_tail, KsResult, McEstimate, SlopeFit};
pub use studies::{
    bm_cross_anchor, estimate_endpoint_interior, estimate_interior_probability, lamperti_stationarity_test,
    reversibility_test, scaling_fit, staircase_profile, staircase_trace,
};
