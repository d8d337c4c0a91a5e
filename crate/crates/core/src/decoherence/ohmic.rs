use crate::numerics::gamma;
use crate::scalar::Real;

use super::{check_time, DecoherenceError, Result};

/// Spectral density `J(ω) = ω^s e^{−ω}` (cutoff frequency set to one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhmicSpectrum<R: Real> {
    pub s: R,
}

impl<R: Real> OhmicSpectrum<R> {
    pub fn new(s: R) -> Result<Self> {
        if !(s > R::zero() && s.is_finite()) {
            return Err(DecoherenceError::DomainError(format!("Ohmicity s = {s} must be > 0")));
        }
        Ok(Self { s })
    }
}

/// Two qubits in a shared Ohmic bath separated by the transit time `t_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommonEnvSpec<R: Real> {
    pub ohmic: OhmicSpectrum<R>,
    pub t_s: R,
}

impl<R: Real> CommonEnvSpec<R> {
    pub fn new(s: R, t_s: R) -> Result<Self> {
        if !(t_s > R::zero()) {
            return Err(DecoherenceError::DomainError(format!("transit time t_s = {t_s} must be > 0")));
        }
        Ok(Self { ohmic: OhmicSpectrum::new(s)?, t_s })
    }
}

/// `(1 − C(a)) / (s − 1)` with `C(a) = (1+a²)^{−(s−1)/2} cos((s−1) atan a)`,
/// evaluated without cancellation; equals `ln(1+a²)/2` at `s = 1`.
fn reduced_memory<R: Real>(s: R, a: R) -> R {
    let eps = s - R::one();
    let l = (a * a).ln_1p();
    if eps == R::zero() {
        return l * R::lit(0.5);
    }
    let x = -eps * l * R::lit(0.5);
    let half_y = eps * a.atan() * R::lit(0.5);
    let sn = half_y.sin();
    (-x.exp_m1() + R::lit(2.0) * x.exp() * sn * sn) / eps
}

/// `(1+a²)^{−s/2} sin(s atan a)`, odd in `a`.
fn rate_kernel<R: Real>(s: R, a: R) -> R {
    (-(s * R::lit(0.5)) * (a * a).ln_1p()).exp() * (s * a.atan()).sin()
}

/// Decoherence function `Γ(t)`; the off-diagonal of a dephased qubit decays as `e^{−Γ}`.
pub fn gamma_ohmic<R: Real>(spec: &OhmicSpectrum<R>, t: R) -> Result<R> {
    check_time(t)?;
    Ok(R::lit(2.0) * gamma(spec.s) * reduced_memory(spec.s, t))
}

/// `γ1(t) = ½ dΓ/dt`.
pub fn dephasing_rate<R: Real>(spec: &OhmicSpectrum<R>, t: R) -> Result<R> {
    check_time(t)?;
    Ok(gamma(spec.s) * rate_kernel(spec.s, t))
}

/// `Γ(∞) = 2Γ̃(s−1)` for `s > 1`; the decoherence grows without bound otherwise.
pub fn gamma_limit<R: Real>(spec: &OhmicSpectrum<R>) -> Option<R> {
    (spec.s > R::one()).then(|| R::lit(2.0) * gamma(spec.s - R::one()))
}

/// First negativity interval of `γ1` in closed form, `b1 = ∞` encoded as infinity.
pub fn ohmic_interval_endpoints<R: Real>(spec: &OhmicSpectrum<R>) -> Option<(R, R)> {
    let s = spec.s;
    let pi = R::PI();
    if s <= R::lit(2.0) || s > R::lit(6.0) {
        None
    } else if s <= R::lit(4.0) {
        Some(((pi / s).tan(), R::infinity()))
    } else {
        Some(((pi / s).tan(), (R::lit(2.0) * pi / s).tan()))
    }
}

/// `(Γ(a1), Γ(b1))` for `2 < s ≤ 6`.
pub fn gamma_endpoint_values<R: Real>(spec: &OhmicSpectrum<R>) -> Result<(R, R)> {
    let s = spec.s;
    if !(s > R::lit(2.0) && s <= R::lit(6.0)) {
        return Err(DecoherenceError::DomainError(format!("endpoint values need 2 < s ≤ 6, got {s}")));
    }
    let two = R::lit(2.0);
    let pi = R::PI();
    let pref = two * gamma(s) / (s - R::one());
    let at_a1 = pref * (R::one() + (pi / s).cos().powf(s));
    let at_b1 = if s <= R::lit(4.0) {
        two * gamma(s - R::one())
    } else {
        pref * (R::one() - (two * pi / s).cos().powf(s))
    };
    Ok((at_a1, at_b1))
}

/// Cross-talk term `δ(t)` of the shared bath.
pub fn delta_cross_talk<R: Real>(spec: &CommonEnvSpec<R>, t: R) -> Result<R> {
    check_time(t)?;
    let s = spec.ohmic.s;
    let ts = spec.t_s;
    let half = R::lit(0.5);
    let d = half * reduced_memory(s, ts - t) + half * reduced_memory(s, ts + t) - reduced_memory(s, ts);
    Ok(R::lit(4.0) * gamma(s) * d)
}

/// `δ(∞) = 4Γ̃(s−1) C(t_s)` for `s > 1`.
pub fn delta_limit<R: Real>(spec: &CommonEnvSpec<R>) -> Option<R> {
    let s = spec.ohmic.s;
    (s > R::one()).then(|| {
        let eps = s - R::one();
        let ts = spec.t_s;
        let c = (-(eps * R::lit(0.5)) * (ts * ts).ln_1p()).exp() * (eps * ts.atan()).cos();
        R::lit(4.0) * gamma(eps) * c
    })
}

/// `(Γ₊, Γ₋) = (2Γ + δ, 2Γ − δ)`.
pub fn gamma_plus_minus<R: Real>(spec: &CommonEnvSpec<R>, t: R) -> Result<(R, R)> {
    let g2 = R::lit(2.0) * gamma_ohmic(&spec.ohmic, t)?;
    let d = delta_cross_talk(spec, t)?;
    Ok((g2 + d, g2 - d))
}

/// `(γ₊, γ₋) = (γ1 + γ2, γ1 − γ2)` with `γ2 = ¼ dδ/dt`.
pub fn rate_plus_minus<R: Real>(spec: &CommonEnvSpec<R>, t: R) -> Result<(R, R)> {
    let g1 = dephasing_rate(&spec.ohmic, t)?;
    let g2 = cross_rate_of(spec, t);
    Ok((g1 + g2, g1 - g2))
}

pub(crate) fn cross_rate_of<R: Real>(spec: &CommonEnvSpec<R>, t: R) -> R {
    let s = spec.ohmic.s;
    let ts = spec.t_s;
    R::lit(0.5) * gamma(s) * (rate_kernel(s, ts + t) - rate_kernel(s, ts - t))
}
