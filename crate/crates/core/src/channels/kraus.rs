use crate::qmath::{hermitian_eigen, ComplexMatrix, DensityMatrix};
use crate::scalar::{cr, Complex, Real};
use num_traits::Zero;

use super::{ChannelError, ChannelModel, Result};

/// Operator-sum representation at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet<R: Real> {
    pub operators: Vec<ComplexMatrix<R>>,
    pub time: R,
}

impl<R: Real> KrausSet<R> {
    /// `‖Σ K†K − 1‖_max`.
    pub fn completeness_defect(&self) -> R {
        let d = self.operators[0].dim();
        let mut acc = ComplexMatrix::zeros(d);
        for k in &self.operators {
            acc = &acc + &(&k.adjoint() * k);
        }
        acc.max_abs_diff(&ComplexMatrix::identity(d))
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        let mut acc = ComplexMatrix::zeros(rho.dim());
        for k in &self.operators {
            acc = &acc + &rho.conjugate_by(k);
        }
        acc
    }

    /// Environment state `Ẽ_kl = Tr(K_k ρ K_l†)`.
    pub fn complementary(&self, rho: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        let n = self.operators.len();
        let krho: Vec<_> = self.operators.iter().map(|k| k * rho).collect();
        ComplexMatrix::from_fn(n, |k, l| {
            // Tr(A B†) = Σ_ij A_ij conj(B_ij)
            let (a, b) = (&krho[k], &self.operators[l]);
            let mut s = Complex::zero();
            for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
                s += *x * y.conj();
            }
            s
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut ops = Vec::with_capacity(self.operators.len() * other.operators.len());
        for a in &self.operators {
            for b in &other.operators {
                ops.push(a.kron(b));
            }
        }
        Self { operators: ops, time: self.time }
    }
}

fn sigma_z<R: Real>() -> ComplexMatrix<R> {
    ComplexMatrix::diagonal(&[cr(R::one()), cr(-R::one())])
}

/// Diagonal Kraus operators `√λ_k diag(u_k)` from the spectral decomposition of a PSD mask.
pub(crate) fn mask_kraus<R: Real>(mask: &ComplexMatrix<R>, t: R) -> Result<KrausSet<R>> {
    let eig = hermitian_eigen(mask)?;
    let n = mask.dim();
    let mut ops = Vec::with_capacity(n);
    for (k, &lam) in eig.values.iter().enumerate() {
        if lam < -R::tol(1e-10) {
            return Err(ChannelError::BranchError(format!("dephasing mask has eigenvalue {lam}")));
        }
        let w = lam.max(R::zero()).sqrt();
        let diag: Vec<_> = eig.vector(k).iter().map(|u| *u * cr(w)).collect();
        ops.push(ComplexMatrix::diagonal(&diag));
    }
    Ok(KrausSet { operators: ops, time: t })
}

pub(crate) fn dephasing_kraus<R: Real>(gamma: R, t: R) -> Result<KrausSet<R>> {
    let k = (-gamma).exp();
    if !(k <= R::one() + R::tol(1e-12)) {
        return Err(ChannelError::BranchError(format!("e^(-Γ) = {k}")));
    }
    let k = k.min(R::one());
    let half = R::lit(0.5);
    let a = ((R::one() + k) * half).sqrt();
    let b = ((R::one() - k) * half).sqrt();
    Ok(KrausSet { operators: vec![ComplexMatrix::identity(2).scale_real(a), sigma_z().scale_real(b)], time: t })
}

pub(crate) fn ad_kraus<R: Real>(g: Complex<R>, t: R) -> Result<KrausSet<R>> {
    let p = g.norm_sqr();
    if !(p <= R::one() + R::tol(1e-10)) {
        return Err(ChannelError::BranchError(format!("|G|² = {p}")));
    }
    let z = Complex::zero();
    let k1 = ComplexMatrix::from_row_major(vec![cr(R::one()), z, z, g]).expect("2x2");
    let k2 = ComplexMatrix::from_row_major(vec![z, cr((R::one() - p).max(R::zero()).sqrt()), z, z]).expect("2x2");
    Ok(KrausSet { operators: vec![k1, k2], time: t })
}

impl<R: Real> ChannelModel<R> {
    /// Kraus operators at time `t`.
    pub fn kraus_at(&self, t: R) -> Result<KrausSet<R>> {
        self.propagator()?.at(t)?.kraus()
    }

    /// Output of the complementary channel (the environment's state).
    pub fn complementary_apply(&self, rho: &DensityMatrix<R>, t: R) -> Result<DensityMatrix<R>> {
        self.propagator()?.at(t)?.complementary(rho)
    }
}
