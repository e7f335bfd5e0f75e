//! Seeded experiments that emit reports with parameters, per-trial
//! records, summaries and threshold verdicts.

mod covers;
mod decoration;
mod regular;
mod report;

pub use covers::{
    bordenave_collins_experiment, cover_target, relative_ramanujan_rayleigh, BlockFactor, BordenaveCollinsConfig,
    CoverTarget, RelativeRamanujanConfig,
};
pub use decoration::{decoration_case, fraczyk_decoration_experiment, DecorationCase, FraczykConfig};
pub use regular::{
    alon_boppana_experiment, config_model_experiment, friedman_experiment, AlonBoppanaConfig, ConfigModelConfig,
    FriedmanConfig,
};
pub use report::{ExperimentReport, PlotSeries, Verdict};
