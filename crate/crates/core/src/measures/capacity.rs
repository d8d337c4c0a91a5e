use crate::channels::{ChannelModel, Snapshot, SnapshotParams};
use crate::numerics::golden_section_max;
use crate::qmath::{binary_entropy, von_neumann_entropy, DensityMatrix};
use crate::scalar::Real;

use super::Result;

/// Coarse-grid size for the one-dimensional capacity searches.
pub const DEFAULT_OPTIMIZER_BUDGET: usize = 64;
const SEARCH_TOL: f64 = 1e-10;

/// `(S(ρ), S(Φ_t ρ), S(Ẽ_t ρ))` in bits.
fn entropies<R: Real>(snap: &Snapshot<R>, rho: &DensityMatrix<R>) -> Result<(R, R, R)> {
    let out = snap.apply(rho)?;
    let env = snap.complementary(rho)?;
    Ok((von_neumann_entropy(rho)?, von_neumann_entropy(&out)?, von_neumann_entropy(&env)?))
}

pub(crate) fn mutual_info_at<R: Real>(snap: &Snapshot<R>, rho: &DensityMatrix<R>) -> Result<R> {
    let (s, so, se) = entropies(snap, rho)?;
    Ok(s + so - se)
}

pub(crate) fn coherent_info_at<R: Real>(snap: &Snapshot<R>, rho: &DensityMatrix<R>) -> Result<R> {
    let (_, so, se) = entropies(snap, rho)?;
    Ok(so - se)
}

/// `I(ρ, Φ_t) = S(ρ) + S(Φ_t ρ) − S(ρ, Φ_t)`, in bits.
pub fn mutual_info_channel<R: Real>(model: &ChannelModel<R>, rho: &DensityMatrix<R>, t: R) -> Result<R> {
    mutual_info_at(&model.propagator()?.at(t)?, rho)
}

/// `I_c(ρ, Φ_t) = S(Φ_t ρ) − S(ρ, Φ_t)`, in bits.
pub fn coherent_info<R: Real>(model: &ChannelModel<R>, rho: &DensityMatrix<R>, t: R) -> Result<R> {
    coherent_info_at(&model.propagator()?.at(t)?, rho)
}

/// Maximum of `f` on `[0, hi]` by a coarse scan followed by golden section.
fn maximize_1d<R: Real>(f: impl Fn(R) -> Result<R>, hi: R, budget: usize) -> Result<(R, R)> {
    let n = budget.max(16);
    let step = hi / R::from_usize(n - 1).unwrap();
    let mut best = (R::zero(), f(R::zero())?);
    for k in 1..n {
        let x = if k + 1 == n { hi } else { step * R::from_usize(k).unwrap() };
        let v = f(x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    let lo = (best.0 - step).max(R::zero());
    let up = (best.0 + step).min(hi);
    let err = std::cell::Cell::new(None);
    let (x, v) = golden_section_max(
        |x| {
            f(x).unwrap_or_else(|e| {
                err.set(Some(e));
                R::neg_infinity()
            })
        },
        lo,
        up,
        R::tol(SEARCH_TOL),
    );
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok(if v > best.1 { (x, v) } else { best })
}

/// `diag(a, ½ − a, ½ − a, a)`: the family left invariant by the symmetries of
/// the common-bath mask (qubit swap and the joint flip `|ij⟩ → |ī j̄⟩`).
fn symmetric_diagonal<R: Real>(a: R) -> Result<DensityMatrix<R>> {
    let b = R::lit(0.5) - a;
    Ok(DensityMatrix::diagonal(&[a, b, b, a])?)
}

fn excited<R: Real>(p: R) -> Result<DensityMatrix<R>> {
    Ok(DensityMatrix::diagonal(&[R::one() - p, p])?)
}

fn ad_mutual<R: Real>(g2: R, p: R) -> Result<R> {
    Ok(binary_entropy(p)? + binary_entropy(g2 * p)? - binary_entropy((R::one() - g2) * p)?)
}

fn ad_coherent<R: Real>(g2: R, p: R) -> Result<R> {
    Ok(binary_entropy(g2 * p)? - binary_entropy((R::one() - g2) * p)?)
}

fn doubled<R: Real>(model: &ChannelModel<R>, (v, rho): (R, DensityMatrix<R>)) -> (R, DensityMatrix<R>) {
    if model.is_two_qubit() {
        (v + v, rho.tensor(&rho))
    } else {
        (v, rho)
    }
}

pub(crate) fn c_ea_at<R: Real>(snap: &Snapshot<R>, budget: usize) -> Result<(R, DensityMatrix<R>)> {
    let model = snap.model;
    match (&snap.params, model) {
        (SnapshotParams::Dephasing { .. }, ChannelModel::Dephasing2QCommon(_)) => {
            // phase covariance and concavity put the optimum on diagonal inputs;
            // the mask symmetries reduce those to one parameter
            let (a, v) = maximize_1d(|a| mutual_info_at(snap, &symmetric_diagonal(a)?), R::lit(0.5), budget)?;
            Ok((v, symmetric_diagonal(a)?))
        }
        (SnapshotParams::Dephasing { .. }, _) => {
            let rho = DensityMatrix::maximally_mixed(model.dim());
            Ok((mutual_info_at(snap, &rho)?, rho))
        }
        (SnapshotParams::Damping { g }, _) => {
            let g2 = g.norm_sqr().min(R::one());
            let (p, v) = maximize_1d(|p| ad_mutual(g2, p), R::one(), budget)?;
            Ok(doubled(&model, (v, excited(p)?)))
        }
    }
}

pub(crate) fn q_cap_at<R: Real>(snap: &Snapshot<R>, budget: usize) -> Result<(R, DensityMatrix<R>)> {
    let model = snap.model;
    match (&snap.params, model) {
        (SnapshotParams::Dephasing { .. }, ChannelModel::Dephasing2QCommon(_)) => {
            let (a, v) = maximize_1d(|a| coherent_info_at(snap, &symmetric_diagonal(a)?), R::lit(0.5), budget)?;
            Ok((v.max(R::zero()), symmetric_diagonal(a)?))
        }
        (SnapshotParams::Dephasing { .. }, _) => {
            let rho = DensityMatrix::maximally_mixed(model.dim());
            Ok((coherent_info_at(snap, &rho)?, rho))
        }
        (SnapshotParams::Damping { g }, _) => {
            let g2 = g.norm_sqr().min(R::one());
            if g2 <= R::lit(0.5) {
                // anti-degradable
                return Ok(doubled(&model, (R::zero(), excited(R::zero())?)));
            }
            let (p, v) = maximize_1d(|p| ad_coherent(g2, p), R::one(), budget)?;
            Ok(doubled(&model, (v.max(R::zero()), excited(p)?)))
        }
    }
}

/// Entanglement-assisted classical capacity `max_ρ I(ρ, Φ_t)` and its optimizer.
pub fn c_ea<R: Real>(model: &ChannelModel<R>, t: R, optimizer_budget: usize) -> Result<(R, DensityMatrix<R>)> {
    c_ea_at(&model.propagator()?.at(t)?, optimizer_budget)
}

/// Quantum capacity as the one-shot maximum of the coherent information
/// (exact for the degradable channels here, zero when anti-degradable).
pub fn q_cap<R: Real>(model: &ChannelModel<R>, t: R, optimizer_budget: usize) -> Result<(R, DensityMatrix<R>)> {
    q_cap_at(&model.propagator()?.at(t)?, optimizer_budget)
}
