//! Non-Markovianity measures and the capacities they are built on.

mod blp;
mod capacity;
mod flux;
mod result;
mod rhp;
mod sampler;

pub use blp::n_blp;
pub use capacity::{c_ea, coherent_info, mutual_info_channel, q_cap, DEFAULT_OPTIMIZER_BUDGET};
pub use flux::{n_c, n_c_with_budget, n_lfs, n_q, n_q_with_budget};
pub use result::{Argmax, MeasureResult};
pub use rhp::{n_rhp, POLE_AMPLITUDE};
pub use sampler::{analytic_pairs, analytic_states, haar_ket, random_mixed, SamplingStrategy, StateSampler};

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

use crate::channels::{ChannelError, ChannelModel};
use crate::decoherence::DecoherenceError;
use crate::numerics::{accumulate_increase, IntervalList, NumericsError, TailPolicy, TimeWindow, DEFAULT_REFINE_TOL};
use crate::qmath::QMathError;
use crate::scalar::Real;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("invalid sampler: {0}")]
    InvalidSampler(String),
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    QMath(#[from] QMathError),
    #[error(transparent)]
    Decoherence(#[from] DecoherenceError),
}

pub type Result<T> = std::result::Result<T, MeasureError>;

/// The five measures, by their short identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Rhp,
    Blp,
    /// Information flux `N_I`.
    Lfs,
    /// Entanglement-assisted capacity `N_C`.
    Cea,
    /// Quantum capacity `N_Q`.
    Q,
}

impl Measure {
    pub const ALL: [Measure; 5] = [Measure::Rhp, Measure::Blp, Measure::Lfs, Measure::Cea, Measure::Q];

    pub fn id(&self) -> &'static str {
        match self {
            Self::Rhp => "rhp",
            Self::Blp => "blp",
            Self::Lfs => "lfs",
            Self::Cea => "cea",
            Self::Q => "q",
        }
    }

    /// Whether the measure draws from the sampler.
    pub fn is_sampled(&self) -> bool {
        matches!(self, Self::Blp | Self::Lfs)
    }

    pub fn compute<R: Real>(&self, model: &ChannelModel<R>, window: &TimeWindow<R>, sampler: &StateSampler) -> Result<MeasureResult<R>> {
        match self {
            Self::Rhp => n_rhp(model, window),
            Self::Blp => n_blp(model, window, sampler),
            Self::Lfs => n_lfs(model, window, sampler),
            Self::Cea => n_c(model, window),
            Self::Q => n_q(model, window),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Measure {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "rhp" => Self::Rhp,
            "blp" => Self::Blp,
            "lfs" | "i" | "n_i" => Self::Lfs,
            "cea" | "c" | "n_c" => Self::Cea,
            "q" | "n_q" => Self::Q,
            _ => return Err(MeasureError::UnknownMeasure(s.into())),
        })
    }
}

/// `accumulate_increase` for a fallible integrand; the first error wins.
///
/// With `TailPolicy::AnalyticLimit` and a known `f(∞)`, the function is taken
/// to be monotone beyond the window and any rise `f(∞) − f(t_end)` is added.
pub(crate) fn increase<R: Real>(
    f: impl Fn(R) -> Result<R>,
    window: &TimeWindow<R>,
    limit: Option<R>,
) -> Result<(R, IntervalList<R>)> {
    let (mut total, mut intervals) = increase_in_window(&f, window)?;
    if let (TailPolicy::AnalyticLimit, Some(f_inf)) = (window.tail, limit) {
        let end = window.t_end;
        let gain = f_inf - f(end)?;
        if gain > R::tol(1e-12) * (R::one() + f_inf.abs()) {
            total += gain;
            if !intervals.intervals.last().is_some_and(|&(_, b)| b >= end) {
                intervals.intervals.push((end, end));
            }
        }
    }
    Ok((total, intervals))
}

fn increase_in_window<R: Real>(f: &impl Fn(R) -> Result<R>, window: &TimeWindow<R>) -> Result<(R, IntervalList<R>)> {
    let err = RefCell::new(None);
    let out = accumulate_increase(
        |t| match f(t) {
            Ok(v) => v,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                R::nan()
            }
        },
        window,
        R::lit(DEFAULT_REFINE_TOL),
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(out?)
}
