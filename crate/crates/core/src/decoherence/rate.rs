use std::fmt;
use std::sync::Arc;

use crate::numerics::{find_sign_changes, IntervalList, TimeWindow};
use crate::scalar::{Complex, Real};

use super::{g_lorentzian, g_lorentzian_dot, DecoherenceError, LorentzianSpec, PbgRoots, PbgSpec, Result};

pub const DEFAULT_POLE_GUARD: f64 = 1e-9;
/// Step used for numerical derivatives of the band-gap amplitude.
pub const PBG_DERIVATIVE_STEP: f64 = 1e-4;

type ScalarFn<R> = Arc<dyn Fn(R) -> R + Send + Sync>;

/// A signed decay rate `t → γ(t)` and what is known about it in closed form.
#[derive(Clone)]
pub struct RateFunction<R: Real> {
    pub label: &'static str,
    rate: ScalarFn<R>,
    sign: Option<ScalarFn<R>>,
    primitive: Option<ScalarFn<R>>,
    limit: Option<R>,
    amplitude: Option<ScalarFn<R>>,
}

impl<R: Real> fmt::Debug for RateFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RateFunction")
            .field("label", &self.label)
            .field("has_primitive", &self.primitive.is_some())
            .field("limit", &self.limit)
            .finish()
    }
}

impl<R: Real> RateFunction<R> {
    pub fn new(label: &'static str, rate: impl Fn(R) -> R + Send + Sync + 'static) -> Self {
        Self { label, rate: Arc::new(rate), sign: None, primitive: None, limit: None, amplitude: None }
    }

    /// A pole-free function with the same sign as the rate, used for interval search.
    pub fn with_sign_proxy(mut self, f: impl Fn(R) -> R + Send + Sync + 'static) -> Self {
        self.sign = Some(Arc::new(f));
        self
    }

    /// `P` with `P' = γ`, and optionally `P(∞)`.
    pub fn with_primitive(mut self, f: impl Fn(R) -> R + Send + Sync + 'static, limit: Option<R>) -> Self {
        self.primitive = Some(Arc::new(f));
        self.limit = limit;
        self
    }

    /// `|G(t)|` for rates of the form `−d/dt ln|G|²`; zeros of `G` are poles of the rate.
    pub fn with_amplitude(mut self, f: impl Fn(R) -> R + Send + Sync + 'static) -> Self {
        self.amplitude = Some(Arc::new(f));
        self
    }

    #[inline]
    pub fn eval(&self, t: R) -> R {
        (self.rate)(t)
    }

    pub fn sign_at(&self, t: R) -> R {
        match &self.sign {
            Some(s) => s(t),
            None => self.eval(t),
        }
    }

    pub fn primitive(&self, t: R) -> Option<R> {
        self.primitive.as_ref().map(|p| p(t))
    }

    pub fn primitive_limit(&self) -> Option<R> {
        self.limit
    }

    pub fn amplitude(&self, t: R) -> Option<R> {
        self.amplitude.as_ref().map(|a| a(t))
    }

    /// Maximal intervals in the window where the rate is negative.
    pub fn negative_intervals(&self, window: &TimeWindow<R>, refine_tol: R) -> Result<IntervalList<R>> {
        Ok(find_sign_changes(|t| self.sign_at(t), window, refine_tol)?)
    }
}

/// Amplitude-damping reservoirs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AdReservoir<R: Real> {
    Lorentzian(LorentzianSpec<R>),
    Pbg(PbgSpec<R>),
}

impl<R: Real> AdReservoir<R> {
    pub fn g(&self, t: R) -> Result<Complex<R>> {
        match self {
            Self::Lorentzian(s) => g_lorentzian(s, t),
            Self::Pbg(s) => PbgRoots::new(s)?.g(t),
        }
    }

    /// `dG/dt`: analytic for the Lorentzian, finite differences for the band gap.
    pub fn g_dot(&self, t: R) -> Result<Complex<R>> {
        match self {
            Self::Lorentzian(s) => g_lorentzian_dot(s, t),
            Self::Pbg(s) => PbgRoots::new(s)?.g_dot(t, R::lit(PBG_DERIVATIVE_STEP)),
        }
    }

    /// `t → G(t)` with root data computed once.
    pub fn amplitude_fn(&self) -> Result<Arc<dyn Fn(R) -> Result<Complex<R>> + Send + Sync>> {
        Ok(match *self {
            Self::Lorentzian(s) => Arc::new(move |t| g_lorentzian(&s, t)),
            Self::Pbg(s) => {
                let roots = PbgRoots::new(&s)?;
                Arc::new(move |t| roots.g(t))
            }
        })
    }

    /// Evaluator that caches root data; returns `(G, dG/dt)`.
    pub fn evaluator(&self) -> Result<impl Fn(R) -> Result<(Complex<R>, Complex<R>)> + Send + Sync + Clone> {
        let roots = match self {
            Self::Pbg(s) => Some(PbgRoots::new(s)?),
            Self::Lorentzian(_) => None,
        };
        let this = *self;
        Ok(move |t: R| match (&this, &roots) {
            (Self::Lorentzian(s), _) => Ok((g_lorentzian(s, t)?, g_lorentzian_dot(s, t)?)),
            (Self::Pbg(_), Some(r)) => Ok((r.g(t)?, r.g_dot(t, R::lit(PBG_DERIVATIVE_STEP))?)),
            (Self::Pbg(s), None) => {
                let r = PbgRoots::new(s)?;
                Ok((r.g(t)?, r.g_dot(t, R::lit(PBG_DERIVATIVE_STEP))?))
            }
        })
    }

    /// `γ1(t) = −2 Re(Ġ/G)`.
    pub fn decay_rate(&self, t: R) -> Result<R> {
        let (g, gd) = (self.g(t)?, self.g_dot(t)?);
        rate_from(g, gd, t, R::lit(DEFAULT_POLE_GUARD))
    }
}

fn rate_from<R: Real>(g: Complex<R>, gd: Complex<R>, t: R, guard: R) -> Result<R> {
    if !(g.norm() > guard) {
        return Err(DecoherenceError::PoleProximity { t: t.as_f64() });
    }
    Ok(-R::lit(2.0) * (gd / g).re)
}

/// `γ1(t) = −2 Re(Ġ/G)` for an arbitrary amplitude, with `Ġ` by central differences.
pub fn ad_decay_rate<R: Real>(g: impl Fn(R) -> Complex<R>, t: R, h: R) -> Result<R> {
    let gd = (g(t + h) - g(t - h)) / Complex::new(h + h, R::zero());
    rate_from(g(t), gd, t, R::lit(DEFAULT_POLE_GUARD))
}
