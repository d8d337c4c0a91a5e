use crate::scalar::Real;

use super::{grid, IntervalList, NumericsError, Result, TimeWindow};

/// Refinement stops doubling the grid beyond this multiple of the requested size.
const MAX_REFINEMENT: usize = 16;

fn eval_grid<R: Real>(f: &impl Fn(R) -> R, ts: &[R]) -> Result<Vec<R>> {
    ts.iter()
        .map(|&t| {
            let v = f(t);
            if v.is_nan() {
                Err(NumericsError::NonFinite(t.as_f64()))
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// Bisects a sign change of `f` between `lo` (where `neg_at_lo` describes the sign) and `hi`.
fn bisect_sign<R: Real>(f: &impl Fn(R) -> R, mut lo: R, mut hi: R, neg_at_lo: bool, tol: R) -> R {
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * R::lit(0.5);
        if (f(mid) < R::zero()) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * R::lit(0.5)
}

/// Maximal subintervals of the window where `f < 0`, endpoints bisected to `refine_tol`.
///
/// Every grid cell is also probed at its midpoint; a sign pattern hidden
/// inside a cell doubles the grid, up to a fixed cap.
pub fn find_sign_changes<R: Real>(f: impl Fn(R) -> R, window: &TimeWindow<R>, refine_tol: R) -> Result<IntervalList<R>> {
    let mut n = window.grid_points;
    let cap = window.grid_points * MAX_REFINEMENT;
    loop {
        let ts = grid(window.t_start, window.t_end, n);
        let vs = eval_grid(&f, &ts)?;
        let neg: Vec<bool> = vs.iter().map(|v| *v < R::zero()).collect();

        let mut hidden = false;
        for k in 0..n - 1 {
            if neg[k] == neg[k + 1] {
                let mid = (ts[k] + ts[k + 1]) * R::lit(0.5);
                if (f(mid) < R::zero()) != neg[k] {
                    hidden = true;
                    break;
                }
            }
        }
        if hidden {
            if n * 2 > cap {
                return Err(NumericsError::GridTooCoarse { points: n });
            }
            n = 2 * n - 1;
            continue;
        }

        let mut out = IntervalList::new();
        let mut k = 0;
        while k < n {
            if !neg[k] {
                k += 1;
                continue;
            }
            let start = k;
            while k < n && neg[k] {
                k += 1;
            }
            let a = if start == 0 { ts[0] } else { bisect_sign(&f, ts[start - 1], ts[start], false, refine_tol) };
            let b = if k == n { ts[n - 1] } else { bisect_sign(&f, ts[k - 1], ts[k], true, refine_tol) };
            if b > a {
                out.intervals.push((a, b));
            }
        }
        return Ok(out);
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`; returns `(t*, f(t*))`.
pub fn golden_section_max<R: Real>(f: impl Fn(R) -> R, mut a: R, mut b: R, tol: R) -> (R, R) {
    let inv_phi = R::lit(0.618_033_988_749_894_9);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn refine_extremum<R: Real>(f: &impl Fn(R) -> R, ts: &[R], vs: &[R], k: usize, maximum: bool, tol: R) -> (R, R) {
    let n = ts.len();
    if k == 0 || k == n - 1 {
        return (ts[k], vs[k]);
    }
    let sign = if maximum { R::one() } else { -R::one() };
    let (t, g) = golden_section_max(|t| sign * f(t), ts[k - 1], ts[k + 1], tol);
    // keep the grid value if the search did not improve on it
    if g >= sign * vs[k] {
        (t, sign * g)
    } else {
        (ts[k], vs[k])
    }
}

fn increase_on_grid<R: Real>(f: &impl Fn(R) -> R, ts: &[R], vs: &[R], refine_tol: R) -> (R, IntervalList<R>) {
    let n = ts.len();
    let scale = vs.iter().fold(R::one(), |m, v| m.max(v.abs()));
    let floor = R::tol(1e-12) * scale;

    let mut total = R::zero();
    let mut out = IntervalList::new();
    let mut k = 0;
    while k + 1 < n {
        if !(vs[k + 1] > vs[k]) {
            k += 1;
            continue;
        }
        let start = k;
        while k + 1 < n && vs[k + 1] > vs[k] {
            k += 1;
        }
        if !(vs[k] - vs[start] > floor) {
            continue;
        }
        let (a, fa) = refine_extremum(f, ts, vs, start, false, refine_tol);
        let (b, fb) = refine_extremum(f, ts, vs, k, true, refine_tol);
        let gain = fb - fa;
        if gain > floor && b > a {
            total += gain;
            out.intervals.push((a, b));
        }
    }
    (total, out)
}

/// Interleaves midpoints into a grid, keeping the existing nodes and their values.
fn bisect_grid<R: Real>(f: &impl Fn(R) -> R, ts: &[R], vs: &[R]) -> Result<(Vec<R>, Vec<R>)> {
    let mids: Vec<R> = ts.windows(2).map(|w| (w[0] + w[1]) * R::lit(0.5)).collect();
    let fm = eval_grid(f, &mids)?;
    let mut t2 = Vec::with_capacity(2 * ts.len() - 1);
    let mut v2 = Vec::with_capacity(2 * ts.len() - 1);
    for k in 0..ts.len() {
        t2.push(ts[k]);
        v2.push(vs[k]);
        if k < mids.len() {
            t2.push(mids[k]);
            v2.push(fm[k]);
        }
    }
    Ok((t2, v2))
}

/// Sum of `f(b_i) − f(a_i)` over the maximal intervals where `f` increases.
///
/// Local extrema are located by golden section between neighbouring grid
/// points. The grid is bisected until two successive grids agree; rises
/// below ~1e-12 of the function scale are treated as noise.
pub fn accumulate_increase<R: Real>(f: impl Fn(R) -> R, window: &TimeWindow<R>, refine_tol: R) -> Result<(R, IntervalList<R>)> {
    let cap = window.grid_points * MAX_REFINEMENT;
    let mut ts = grid(window.t_start, window.t_end, window.grid_points);
    let mut vs = eval_grid(&f, &ts)?;
    let mut prev = increase_on_grid(&f, &ts, &vs, refine_tol);
    loop {
        (ts, vs) = bisect_grid(&f, &ts, &vs)?;
        let next = increase_on_grid(&f, &ts, &vs, refine_tol);
        let agree = (next.0 - prev.0).abs() <= R::tol(1e-9) * (R::one() + next.0.abs()) && next.1.len() == prev.1.len();
        if agree {
            return Ok(next);
        }
        if ts.len() * 2 > cap {
            return Err(NumericsError::GridTooCoarse { points: ts.len() });
        }
        prev = next;
    }
}
