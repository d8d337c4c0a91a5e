use crate::scalar::{c, cr, Complex, Real};

use super::{check_time, DecoherenceError, Result};

/// Lorentzian reservoir around the qubit frequency, width `λ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianSpec<R: Real> {
    /// Coupling ratio `γ_M / λ`.
    pub r: R,
    /// Detuning `ω_0 − ω_c` in units of `λ`.
    pub delta_l: R,
}

impl<R: Real> LorentzianSpec<R> {
    pub fn new(r: R, delta_l: R) -> Result<Self> {
        if !(r >= R::zero() && r.is_finite() && delta_l.is_finite()) {
            return Err(DecoherenceError::DomainError(format!("Lorentzian r = {r}, Δ = {delta_l}")));
        }
        Ok(Self { r, delta_l })
    }

    pub fn resonant(r: R) -> Result<Self> {
        Self::new(r, R::zero())
    }

    /// `(a, Ω)` with `a = 1 − iΔ` and `Ω² = a² − 2r`.
    fn exponents(&self) -> (Complex<R>, Complex<R>) {
        let a = c(R::one(), -self.delta_l);
        let omega = (a * a - cr(R::lit(2.0) * self.r)).sqrt();
        (a, omega)
    }
}

/// `sinh(x)/x`, with its Taylor series near the origin.
fn sinhc<R: Real>(x: Complex<R>) -> Complex<R> {
    if x.norm() < R::lit(1e-3) {
        let x2 = x * x;
        cr(R::one()) + x2 / cr(R::lit(6.0)) + x2 * x2 / cr(R::lit(120.0))
    } else {
        x.sinh() / x
    }
}

/// Returns `(e^{−at/2} cosh(Ωt/2), e^{−at/2} sinh(Ωt/2)/Ω)` without overflow.
fn propagator_parts<R: Real>(spec: &LorentzianSpec<R>, t: R) -> (Complex<R>, Complex<R>) {
    let (a, omega) = spec.exponents();
    let half_t = t * R::lit(0.5);
    let x = omega * cr(half_t);
    if x.norm() < R::lit(1.0) {
        let damp = (-a * cr(half_t)).exp();
        (damp * x.cosh(), damp * sinhc(x) * cr(half_t))
    } else {
        let up = ((omega - a) * cr(half_t)).exp();
        let down = ((-omega - a) * cr(half_t)).exp();
        let half = cr(R::lit(0.5));
        ((up + down) * half, (up - down) * half / omega)
    }
}

/// Excited-state amplitude `G(t)`.
pub fn g_lorentzian<R: Real>(spec: &LorentzianSpec<R>, t: R) -> Result<Complex<R>> {
    check_time(t)?;
    let (a, _) = spec.exponents();
    let (ch, sh) = propagator_parts(spec, t);
    Ok(ch + a * sh)
}

/// Analytic `dG/dt = −r e^{−at/2} sinh(Ωt/2)/Ω`.
pub fn g_lorentzian_dot<R: Real>(spec: &LorentzianSpec<R>, t: R) -> Result<Complex<R>> {
    check_time(t)?;
    let (_, sh) = propagator_parts(spec, t);
    Ok(-sh * cr(spec.r))
}
