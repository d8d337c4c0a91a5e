use std::fmt;

use crate::numerics::IntervalList;
use crate::qmath::DensityMatrix;
use crate::scalar::Real;

/// The input (state or state pair) attaining a measure.
#[derive(Debug, Clone, PartialEq)]
pub enum Argmax<R: Real> {
    State { label: String, state: DensityMatrix<R> },
    Pair { label: String, first: DensityMatrix<R>, second: DensityMatrix<R> },
}

impl<R: Real> Argmax<R> {
    /// Short canonical descriptor, e.g. `bell_psi_pair`, `max_mixed` or `random`.
    pub fn label(&self) -> &str {
        match self {
            Self::State { label, .. } | Self::Pair { label, .. } => label,
        }
    }
}

/// Outcome of one non-Markovianity measure on one window.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult<R: Real> {
    pub value: R,
    /// Set when the integrand has a pole in the window; `value` is then the
    /// partial sum accumulated before it.
    pub diverged: bool,
    pub intervals: IntervalList<R>,
    pub argmax: Option<Argmax<R>>,
    pub sampler_budget_used: usize,
}

impl<R: Real> MeasureResult<R> {
    pub(crate) fn zero() -> Self {
        Self { value: R::zero(), diverged: false, intervals: IntervalList::new(), argmax: None, sampler_budget_used: 0 }
    }

    pub fn argmax_label(&self) -> &str {
        self.argmax.as_ref().map(|a| a.label()).unwrap_or("")
    }
}

impl<R: Real> fmt::Display for MeasureResult<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if self.diverged {
            write!(f, " (diverged)")?;
        }
        write!(f, " over {} interval(s)", self.intervals.len())?;
        if let Some(a) = &self.argmax {
            write!(f, ", argmax {}", a.label())?;
        }
        Ok(())
    }
}
