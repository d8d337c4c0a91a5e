use crate::channels::ChannelModel;
use crate::numerics::{integrate_adaptive, IntervalList, TailPolicy, TimeWindow, DEFAULT_REFINE_TOL};
use crate::scalar::Real;

use super::{MeasureResult, Result};

/// `|G|` at an interval endpoint below this marks a pole of the decay rate.
pub const POLE_AMPLITUDE: f64 = 1e-6;

/// Rivas–Huelga–Plenio measure: the weighted integral of the negative parts of
/// the canonical decay rates.
///
/// Amplitude-damping rates have poles where `G` vanishes. Summation stops at
/// the first such pole, `diverged` is set and the partial sum is returned.
pub fn n_rhp<R: Real>(model: &ChannelModel<R>, window: &TimeWindow<R>) -> Result<MeasureResult<R>> {
    let tol = R::lit(DEFAULT_REFINE_TOL);
    let pole = R::lit(POLE_AMPLITUDE);
    let mut result = MeasureResult::zero();
    let mut all: Vec<(R, R)> = Vec::new();

    'channels: for wr in model.rate_channels()? {
        let rate = &wr.rate;
        for &(a, b) in rate.negative_intervals(window, tol)?.iter() {
            let at_pole = |t: R| rate.amplitude(t).is_some_and(|g| !(g > pole));
            if at_pole(a) || at_pole(b) {
                result.diverged = true;
                continue 'channels;
            }
            let open = b >= window.t_end && window.tail == TailPolicy::AnalyticLimit;
            let area = match (rate.primitive(a), rate.primitive(b), rate.primitive_limit()) {
                (Some(pa), Some(_), Some(lim)) if open => pa - lim,
                (Some(pa), Some(pb), _) => pa - pb,
                _ => -integrate_adaptive(|t| rate.eval(t), a, b, R::lit(1e-10), R::lit(1e-13))?,
            };
            let area = wr.weight * area.max(R::zero());
            if area > R::zero() {
                result.value += area;
                all.push((a, b));
            }
        }
    }
    result.intervals = merge(all);
    Ok(result)
}

fn merge<R: Real>(mut v: Vec<(R, R)>) -> IntervalList<R> {
    v.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut out: Vec<(R, R)> = Vec::new();
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    IntervalList { intervals: out }
}
