//! Parameter sweeps over the `nmq-core` measures with CSV/JSON output.

pub mod config;
pub mod figures;
pub mod output;
pub mod sweep;

pub use config::SweepConfig;
pub use sweep::{detect_crossover, run_sweep, ResultRow, SweepOutcome};

use nmq_core::measures::MeasureError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("measure `{measure}` does not cross {threshold:e} within the sweep range")]
    NoCrossing { measure: String, threshold: f64 },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for configuration problems, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Exit status for a sweep with `failures` failed rows.
pub fn sweep_exit_code(failures: usize) -> i32 {
    if failures > 0 {
        3
    } else {
        0
    }
}
