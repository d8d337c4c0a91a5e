//! Quadrature, differentiation, interval detection and special functions.

mod erf;
mod gamma;
mod intervals;
mod quadrature;

pub use erf::{complex_erf, erfcx};
pub use gamma::gamma;
pub use intervals::{accumulate_increase, find_sign_changes, golden_section_max};
pub use quadrature::integrate_adaptive;

use crate::scalar::Real;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature tolerance not reached (estimate {estimate:e}, error {error:e})")]
    ToleranceNotReached { estimate: f64, error: f64 },
    #[error("grid too coarse: result still changing at {points} points")]
    GridTooCoarse { points: usize },
    #[error("argument |z| = {0} outside the validated range")]
    RangeError(f64),
    #[error("invalid time window: {0}")]
    InvalidWindow(String),
    #[error("function returned a non-finite value at t = {0}")]
    NonFinite(f64),
}

pub type Result<T> = std::result::Result<T, NumericsError>;

/// How measures treat a backflow interval still open at `t_end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailPolicy {
    /// Stop at `t_end`.
    #[default]
    Truncate,
    /// Continue to `t → ∞` using the closed-form limit where the model has one.
    AnalyticLimit,
}

/// Uniform time grid used by every time-resolved measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWindow<R: Real> {
    pub t_start: R,
    pub t_end: R,
    pub grid_points: usize,
    pub tail: TailPolicy,
}

pub const DEFAULT_GRID_POINTS: usize = 2000;
pub const DEFAULT_REFINE_TOL: f64 = 1e-8;

impl<R: Real> TimeWindow<R> {
    pub fn new(t_start: R, t_end: R, grid_points: usize) -> Result<Self> {
        if !(t_start >= R::zero() && t_end > t_start && t_end.is_finite()) {
            return Err(NumericsError::InvalidWindow(format!("[{t_start}, {t_end}]")));
        }
        if grid_points < 100 {
            return Err(NumericsError::InvalidWindow(format!("{grid_points} grid points (< 100)")));
        }
        Ok(Self { t_start, t_end, grid_points, tail: TailPolicy::Truncate })
    }

    /// `[0, t_end]` with the default grid.
    pub fn span(t_end: R) -> Result<Self> {
        Self::new(R::zero(), t_end, DEFAULT_GRID_POINTS)
    }

    pub fn with_tail(mut self, tail: TailPolicy) -> Self {
        self.tail = tail;
        self
    }

    pub fn with_grid(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points.max(100);
        self
    }

    pub fn step(&self) -> R {
        (self.t_end - self.t_start) / R::from_usize(self.grid_points - 1).unwrap()
    }

    pub fn grid(&self) -> Vec<R> {
        grid(self.t_start, self.t_end, self.grid_points)
    }
}

pub(crate) fn grid<R: Real>(a: R, b: R, n: usize) -> Vec<R> {
    let h = (b - a) / R::from_usize(n - 1).unwrap();
    (0..n)
        .map(|k| if k + 1 == n { b } else { a + h * R::from_usize(k).unwrap() })
        .collect()
}

/// Ordered, disjoint time intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalList<R: Real> {
    pub intervals: Vec<(R, R)>,
}

impl<R: Real> IntervalList<R> {
    pub fn new() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (R, R)> {
        self.intervals.iter()
    }

    pub fn total_length(&self) -> R {
        self.intervals.iter().map(|(a, b)| *b - *a).sum()
    }

    pub fn contains(&self, t: R) -> bool {
        self.intervals.iter().any(|(a, b)| *a <= t && t <= *b)
    }
}

/// Central difference `(f(t+h) − f(t−h)) / 2h`.
pub fn derivative<R: Real>(f: impl Fn(R) -> R, t: R, h: R) -> R {
    (f(t + h) - f(t - h)) / (h + h)
}
