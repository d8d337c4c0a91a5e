use crate::numerics::erfcx;
use crate::scalar::{c, cr, Complex, Real};

use super::{check_time, DecoherenceError, Result};

/// Photonic band-gap reservoir; `z = Δ_P/β` with `β = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PbgSpec<R: Real> {
    pub z: R,
}

impl<R: Real> PbgSpec<R> {
    pub fn new(z: R) -> Result<Self> {
        if !(z >= R::lit(-15.0) && z <= R::lit(2.0)) {
            return Err(DecoherenceError::DomainError(format!("band-gap detuning z = {z} outside [-15, 2]")));
        }
        Ok(Self { z })
    }
}

/// Roots `x_j` of `x³ + i z x − e^{3iπ/4} = 0` with the residues and
/// principal square roots `y_j = √(x_j²)` entering `G(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PbgRoots<R: Real> {
    pub z: R,
    pub x: [Complex<R>; 3],
    pub y: [Complex<R>; 3],
    pub v: [Complex<R>; 3],
}

fn phase<R: Real>(angle: f64) -> Complex<R> {
    c(R::lit(angle.cos()), R::lit(angle.sin()))
}

impl<R: Real> PbgRoots<R> {
    pub fn new(spec: &PbgSpec<R>) -> Result<Self> {
        let z = spec.z;
        let half = R::lit(0.5);
        let rad = R::one() + R::lit(4.0) * z * z * z / R::lit(27.0);
        let (ap, am) = if rad >= R::zero() {
            let q = rad.sqrt();
            (cr((half + half * q).cbrt()), cr((half - half * q).cbrt()))
        } else {
            let q = (-rad).sqrt();
            (c(half, half * q).cbrt(), c(half, -half * q).cbrt())
        };
        use std::f64::consts::PI;
        let x1 = (ap + am) * phase(PI / 4.0);
        let x2 = (ap * phase(-PI / 6.0) - am * phase(PI / 6.0)) * phase(-PI / 4.0);
        let x3 = (ap * phase(PI / 6.0) - am * phase(-PI / 6.0)) * phase(3.0 * PI / 4.0);
        let x = [x1, x2, x3];
        let v = [
            x1 / ((x1 - x2) * (x1 - x3)),
            x2 / ((x2 - x1) * (x2 - x3)),
            x3 / ((x3 - x1) * (x3 - x2)),
        ];
        let y = [(x1 * x1).sqrt(), (x2 * x2).sqrt(), (x3 * x3).sqrt()];
        let roots = Self { z, x, y, v };

        // G(0) = Σ v_j x_j must be one; anything else means a wrong branch
        let g0 = roots.g(R::zero())?;
        if !((g0 - cr(R::one())).norm() <= R::tol(1e-8)) {
            return Err(DecoherenceError::BranchError(format!("G(0) = {g0} for z = {z}")));
        }
        Ok(roots)
    }

    /// `G(t) = e^{izt} Σ_j v_j [(x_j + y_j) e^{x_j² t} − y_j erfcx(y_j √t)]`.
    pub fn g(&self, t: R) -> Result<Complex<R>> {
        check_time(t)?;
        let st = t.sqrt();
        let mut acc = Complex::new(R::zero(), R::zero());
        for j in 0..3 {
            let (x, y, v) = (self.x[j], self.y[j], self.v[j]);
            let pole = x + y;
            if pole.norm() > R::tol(1e-12) * x.norm() {
                acc += v * pole * (x * x * cr(t)).exp();
            }
            acc -= v * y * erfcx(y * cr(st))?;
        }
        Ok(acc * c(R::zero(), self.z * t).exp())
    }

    /// `dG/dt` by central differences (one-sided near `t = 0`).
    pub fn g_dot(&self, t: R, h: R) -> Result<Complex<R>> {
        check_time(t)?;
        if t < h {
            let (g0, g1, g2) = (self.g(t)?, self.g(t + h)?, self.g(t + h + h)?);
            return Ok((g0 * cr(R::lit(-3.0)) + g1 * cr(R::lit(4.0)) - g2) / cr(h + h));
        }
        Ok((self.g(t + h)? - self.g(t - h)?) / cr(h + h))
    }
}

/// Excited-state amplitude in the band-gap reservoir.
pub fn g_pbg<R: Real>(spec: &PbgSpec<R>, t: R) -> Result<Complex<R>> {
    PbgRoots::new(spec)?.g(t)
}
