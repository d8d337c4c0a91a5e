//! Closed-form decoherence functions: Ohmic dephasing factors and
//! amplitude-damping amplitudes for Lorentzian and band-gap reservoirs.

mod lorentzian;
mod ohmic;
mod pbg;
mod rate;

pub use lorentzian::{g_lorentzian, g_lorentzian_dot, LorentzianSpec};
pub use ohmic::{
    delta_cross_talk, delta_limit, dephasing_rate, gamma_endpoint_values, gamma_limit, gamma_ohmic,
    gamma_plus_minus, ohmic_interval_endpoints, rate_plus_minus, CommonEnvSpec, OhmicSpectrum,
};
pub(crate) use ohmic::cross_rate_of;
pub use pbg::{g_pbg, PbgRoots, PbgSpec};
pub use rate::{ad_decay_rate, AdReservoir, RateFunction, DEFAULT_POLE_GUARD};

use crate::numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecoherenceError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("|G(t)| below the pole guard at t = {t}")]
    PoleProximity { t: f64 },
    #[error("branch selection failed: {0}")]
    BranchError(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, DecoherenceError>;

pub(crate) fn check_time<R: crate::Real>(t: R) -> Result<()> {
    if !(t >= R::zero()) || t.is_infinite() {
        return Err(DecoherenceError::DomainError(format!("time t = {t} must be finite and ≥ 0")));
    }
    Ok(())
}
