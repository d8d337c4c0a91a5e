//! The five exactly solvable dynamical maps: evolution, Kraus sets,
//! complementary maps and Lindblad generators.

mod generator;
mod kraus;
mod model;
mod propagator;

pub use generator::{rhp_g, Dissipator};
pub use kraus::KrausSet;
pub use model::{ChannelModel, WeightedRate};
pub use propagator::{Propagator, Snapshot, SnapshotParams};

use crate::decoherence::DecoherenceError;
use crate::qmath::QMathError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("state of dimension {got} given to a channel of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("decoherence factor outside [0, 1]: {0}")]
    BranchError(String),
    #[error("operation not available: {0}")]
    NotAvailable(String),
    #[error("generator unavailable: {0}")]
    GeneratorUnavailable(String),
    #[error(transparent)]
    Decoherence(#[from] DecoherenceError),
    #[error(transparent)]
    QMath(#[from] QMathError),
}

pub type Result<T> = std::result::Result<T, ChannelError>;
