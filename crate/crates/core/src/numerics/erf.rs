use crate::scalar::{cr, Complex, Real};
use num_traits::{One, Zero};

use super::{NumericsError, Result};

const MAX_ARG: f64 = 30.0;

fn use_series<R: Real>(z: Complex<R>) -> bool {
    let r = z.norm();
    r < R::lit(2.0) || (z.re < R::one() && r < R::lit(8.0))
}

/// Maclaurin series `2/√π Σ (−1)^n z^{2n+1} / (n!(2n+1))`.
fn erf_series<R: Real>(z: Complex<R>) -> Complex<R> {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let eps = R::epsilon();
    for n in 1..400 {
        let nf = R::from_usize(n).unwrap();
        term = -term * z2 / cr(nf);
        let add = term / cr(R::lit(2.0) * nf + R::one());
        sum += add;
        if add.norm() <= eps * sum.norm() {
            break;
        }
    }
    sum * cr(R::lit(2.0) / R::PI().sqrt())
}

/// Continued fraction `erfcx(w) = (1/√π) / (w + ½/(w + 1/(w + (3/2)/(w + …))))`, Re w ≥ 0.
fn erfcx_cf<R: Real>(w: Complex<R>) -> Complex<R> {
    let tiny = R::min_positive_value().sqrt();
    let tinyc = cr(tiny);
    let eps = R::epsilon();
    let mut f = if w.norm() < tiny { tinyc } else { w };
    let mut cc = f;
    let mut d = Complex::<R>::zero();
    for k in 1..5000 {
        let a = cr(R::from_usize(k).unwrap() * R::lit(0.5));
        d = w + a * d;
        if d.norm() < tiny {
            d = tinyc;
        }
        cc = w + a / cc;
        if cc.norm() < tiny {
            cc = tinyc;
        }
        d = Complex::<R>::one() / d;
        let delta = cc * d;
        f *= delta;
        if (delta - Complex::<R>::one()).norm() < eps {
            break;
        }
    }
    cr(R::one() / R::PI().sqrt()) / f
}

fn check_range<R: Real>(z: Complex<R>) -> Result<()> {
    let r = z.norm();
    if !(r <= R::lit(MAX_ARG)) {
        return Err(NumericsError::RangeError(r.as_f64()));
    }
    Ok(())
}

/// Error function of a complex argument, `|z| ≤ 30`.
pub fn complex_erf<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    check_range(z)?;
    if z.re < R::zero() {
        return complex_erf(-z).map(|v| -v);
    }
    if use_series(z) {
        return Ok(erf_series(z));
    }
    Ok(Complex::<R>::one() - (-(z * z)).exp() * erfcx_cf(z))
}

/// Scaled complementary error function `e^{w²} erfc(w)` for `Re w ≥ 0`.
///
/// Unlike [`complex_erf`] this stays bounded far from the origin, so the
/// continued fraction is used up to `|w| = 1e4`.
pub fn erfcx<R: Real>(w: Complex<R>) -> Result<Complex<R>> {
    if !(w.norm() <= R::lit(1e4)) || w.re < R::zero() {
        return Err(NumericsError::RangeError(w.re.as_f64()));
    }
    if use_series(w) {
        return Ok((w * w).exp() * (Complex::<R>::one() - erf_series(w)));
    }
    Ok(erfcx_cf(w))
}
