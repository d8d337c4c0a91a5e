use crate::scalar::Real;

use super::{NumericsError, Result};

const MAX_SEGMENTS: usize = 4000;

// Kronrod 15-point abscissae (descending) and weights; Gauss 7-point weights on the odd nodes.
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment<R> {
    a: R,
    b: R,
    value: R,
    error: R,
}

fn gk15<R: Real>(f: &impl Fn(R) -> R, a: R, b: R) -> Result<(R, R)> {
    let half = R::lit(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c);
    let mut k = fc * R::lit(WK[7]);
    let mut g = fc * R::lit(WG[3]);
    for i in 0..7 {
        let dx = h * R::lit(XK[i]);
        let (f1, f2) = (f(c - dx), f(c + dx));
        k += (f1 + f2) * R::lit(WK[i]);
        if i % 2 == 1 {
            g += (f1 + f2) * R::lit(WG[i / 2]);
        }
    }
    let (k, g) = (k * h, g * h);
    if !k.is_finite() {
        return Err(NumericsError::NonFinite(c.as_f64()));
    }
    Ok((k, (k - g).abs()))
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
///
/// Bisects the segment with the largest error until the summed error estimate
/// is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_adaptive<R: Real>(f: impl Fn(R) -> R, a: R, b: R, rel_tol: R, abs_tol: R) -> Result<R> {
    if a == b {
        return Ok(R::zero());
    }
    if b < a {
        return integrate_adaptive(f, b, a, rel_tol, abs_tol).map(|v| -v);
    }
    let (v, e) = gk15(&f, a, b)?;
    let mut segs = vec![Segment { a, b, value: v, error: e }];
    loop {
        let total: R = segs.iter().map(|s| s.value).sum();
        let err: R = segs.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * total.abs());
        if err <= target {
            return Ok(total);
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(NumericsError::ToleranceNotReached { estimate: total.as_f64(), error: err.as_f64() });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, R::neg_infinity()), |acc, (i, s)| if s.error > acc.1 { (i, s.error) } else { acc });
        let s = segs.swap_remove(worst);
        let mid = (s.a + s.b) * R::lit(0.5);
        if !(mid > s.a && mid < s.b) {
            // no floating point room left to split
            return Err(NumericsError::ToleranceNotReached { estimate: total.as_f64(), error: err.as_f64() });
        }
        let (v1, e1) = gk15(&f, s.a, mid)?;
        let (v2, e2) = gk15(&f, mid, s.b)?;
        segs.push(Segment { a: s.a, b: mid, value: v1, error: e1 });
        segs.push(Segment { a: mid, b: s.b, value: v2, error: e2 });
    }
}
