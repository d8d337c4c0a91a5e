use std::fmt;
use std::sync::Arc;

use crate::qmath::{ComplexMatrix, DensityMatrix};
use crate::scalar::{Complex, Real};

use super::kraus::{ad_kraus, dephasing_kraus, mask_kraus};
use super::model::mask_from_exponents;
use super::{ChannelModel, KrausSet, Result};

type AmplitudeFn<R> = Arc<dyn Fn(R) -> crate::decoherence::Result<Complex<R>> + Send + Sync>;

/// A channel model with its reservoir data precomputed, for repeated evaluation.
#[derive(Clone)]
pub struct Propagator<R: Real> {
    model: ChannelModel<R>,
    amplitude: Option<AmplitudeFn<R>>,
}

impl<R: Real> fmt::Debug for Propagator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Propagator").field("model", &self.model).finish()
    }
}

/// The map `Φ_t` at one fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot<R: Real> {
    pub model: ChannelModel<R>,
    pub time: R,
    pub params: SnapshotParams<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SnapshotParams<R: Real> {
    /// `(Γ, Γ₊, Γ₋)` and the resulting mask.
    Dephasing { exponents: (R, R, R), mask: ComplexMatrix<R> },
    Damping { g: Complex<R> },
}

impl<R: Real> ChannelModel<R> {
    pub fn propagator(&self) -> Result<Propagator<R>> {
        let amplitude = match self {
            Self::AmplitudeDamping1Q(r) | Self::AmplitudeDamping2QIndependent(r) => Some(r.amplitude_fn()?),
            _ => None,
        };
        Ok(Propagator { model: *self, amplitude })
    }
}

impl<R: Real> Propagator<R> {
    pub fn model(&self) -> &ChannelModel<R> {
        &self.model
    }

    pub fn at(&self, t: R) -> Result<Snapshot<R>> {
        let params = match &self.amplitude {
            Some(g) => SnapshotParams::Damping { g: g(t)? },
            None => {
                let ex = self.model.dephasing_exponents(t)?.expect("dephasing model");
                SnapshotParams::Dephasing { exponents: ex, mask: mask_from_exponents(self.model.dim(), ex)? }
            }
        };
        Ok(Snapshot { model: self.model, time: t, params })
    }
}

impl<R: Real> Propagator<R> {
    /// The `t → ∞` map, for dephasing models whose exponents converge.
    pub fn at_limit(&self) -> Result<Option<Snapshot<R>>> {
        if self.amplitude.is_some() {
            return Ok(None);
        }
        let Some(ex) = self.model.dephasing_exponents_limit() else { return Ok(None) };
        let params = SnapshotParams::Dephasing { exponents: ex, mask: mask_from_exponents(self.model.dim(), ex)? };
        Ok(Some(Snapshot { model: self.model, time: R::infinity(), params }))
    }
}

impl<R: Real> Snapshot<R> {
    pub fn apply_matrix(&self, m: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        match &self.params {
            SnapshotParams::Dephasing { mask, .. } => m.map(|i, j, z| z * mask[(i, j)]),
            SnapshotParams::Damping { g } => self.model.apply_with_amplitude(m, *g),
        }
    }

    pub fn apply(&self, rho: &DensityMatrix<R>) -> Result<DensityMatrix<R>> {
        self.model.check_dim(rho)?;
        Ok(DensityMatrix::from_matrix_unchecked(self.apply_matrix(rho.matrix())))
    }

    pub fn kraus(&self) -> Result<KrausSet<R>> {
        let t = self.time;
        let single = match (&self.params, &self.model) {
            (SnapshotParams::Dephasing { mask, .. }, ChannelModel::Dephasing2QCommon(_)) => return mask_kraus(mask, t),
            (SnapshotParams::Dephasing { exponents, .. }, _) => dephasing_kraus(exponents.0, t)?,
            (SnapshotParams::Damping { g }, _) => ad_kraus(*g, t)?,
        };
        Ok(if self.model.is_two_qubit() { single.tensor(&single) } else { single })
    }

    /// Environment output `Ẽ_t(ρ)`.
    pub fn complementary(&self, rho: &DensityMatrix<R>) -> Result<DensityMatrix<R>> {
        self.model.check_dim(rho)?;
        Ok(DensityMatrix::from_matrix_unchecked(self.kraus()?.complementary(rho.matrix())))
    }
}
