use crate::channels::ChannelModel;
use crate::numerics::TimeWindow;
use crate::qmath::trace_distance;
use crate::scalar::Real;

use super::{increase, Argmax, MeasureError, MeasureResult, Result, StateSampler};

/// Breuer–Laine–Piilo measure: the largest total revival of the trace distance
/// over the sampled input pairs.
pub fn n_blp<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>, sampler: &StateSampler) -> Result<MeasureResult<R>> {
    let prop = model.propagator()?;
    let pairs = sampler.pairs::<R>(model.dim())?;
    let mut best = MeasureResult::zero();
    best.sampler_budget_used = pairs.len();
    let tail = prop.at_limit()?;
    let mut first = true;
    for (label, a, b) in pairs {
        let (v, iv) = increase(
            |t| {
                let s = prop.at(t)?;
                Ok(trace_distance(&s.apply(&a)?, &s.apply(&b)?)?)
            },
            window,
            tail.as_ref().map(|s| Ok::<_, MeasureError>(trace_distance(&s.apply(&a)?, &s.apply(&b)?)?)).transpose()?,
        )?;
        if first || v > best.value {
            first = false;
            best.value = v;
            best.intervals = iv;
            best.argmax = Some(Argmax::Pair { label, first: a, second: b });
        }
    }
    Ok(best)
}
