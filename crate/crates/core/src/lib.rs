//! Exactly solvable open-qubit channels and non-Markovianity measures.
//!
//! The core is generic over the scalar type through [`scalar::Real`]; the
//! aliases at the crate root fix it to `f64`.

pub mod channels;
pub mod decoherence;
pub mod measures;
pub mod numerics;
pub mod qmath;
pub mod scalar;

pub use scalar::{Complex, Real};

/// `f64` instantiations of the generic types.
pub type ComplexMatrix64 = qmath::ComplexMatrix<f64>;
pub type DensityMatrix64 = qmath::DensityMatrix<f64>;
pub type ChannelModel64 = channels::ChannelModel<f64>;
pub type TimeWindow64 = numerics::TimeWindow<f64>;
pub type MeasureResult64 = measures::MeasureResult<f64>;
