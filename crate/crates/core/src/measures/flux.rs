use crate::channels::{ChannelModel, Snapshot};
use crate::numerics::TimeWindow;
use crate::qmath::DensityMatrix;
use crate::scalar::Real;

use super::capacity::{c_ea_at, mutual_info_at, q_cap_at, DEFAULT_OPTIMIZER_BUDGET};
use super::{increase, Argmax, MeasureResult, Result, StateSampler};

/// Information-flux measure `N_I`: the largest total increase of `I(ρ, Φ_t)`
/// over the sampled inputs.
pub fn n_lfs<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>, sampler: &StateSampler) -> Result<MeasureResult<R>> {
    let prop = model.propagator()?;
    let states = sampler.states::<R>(model.dim())?;
    let mut best = MeasureResult::zero();
    best.sampler_budget_used = states.len();
    let tail = prop.at_limit()?;
    let mut first = true;
    for (label, rho) in states {
        let limit = tail.as_ref().map(|s| mutual_info_at(s, &rho)).transpose()?;
        let (v, iv) = increase(|t| mutual_info_at(&prop.at(t)?, &rho), window, limit)?;
        if first || v > best.value {
            first = false;
            best.value = v;
            best.intervals = iv;
            best.argmax = Some(Argmax::State { label, state: rho });
        }
    }
    Ok(best)
}

/// Total increase of the entanglement-assisted capacity.
pub fn n_c<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>) -> Result<MeasureResult<R>> {
    n_c_with_budget(model, window, DEFAULT_OPTIMIZER_BUDGET)
}

pub fn n_c_with_budget<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>, budget: usize) -> Result<MeasureResult<R>> {
    capacity_increase(model, window, |s| c_ea_at(s, budget))
}

/// Total increase of the quantum capacity.
pub fn n_q<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>) -> Result<MeasureResult<R>> {
    n_q_with_budget(model, window, DEFAULT_OPTIMIZER_BUDGET)
}

pub fn n_q_with_budget<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>, budget: usize) -> Result<MeasureResult<R>> {
    capacity_increase(model, window, |s| q_cap_at(s, budget))
}

fn capacity_increase<R: Real>(
    model: &ChannelModel<R>,
    window: &TimeWindow<R>,
    cap: impl Fn(&Snapshot<R>) -> Result<(R, DensityMatrix<R>)>,
) -> Result<MeasureResult<R>> {
    let prop = model.propagator()?;
    let limit = prop.at_limit()?.map(|s| cap(&s).map(|x| x.0)).transpose()?;
    let (value, intervals) = increase(|t| Ok(cap(&prop.at(t)?)?.0), window, limit)?;
    let mut out = MeasureResult::zero();
    // the optimizer is time dependent; report it at the end of the first revival
    if let Some(&(_, b)) = intervals.intervals.first() {
        let (_, rho) = cap(&prop.at(b)?)?;
        let label = if rho == DensityMatrix::maximally_mixed(model.dim()) { "max_mixed" } else { "diag_optimized" };
        out.argmax = Some(Argmax::State { label: label.into(), state: rho });
    }
    out.value = value;
    out.intervals = intervals;
    Ok(out)
}
