use crate::decoherence::{dephasing_rate, rate_plus_minus};
use crate::qmath::{hermitian_eigenvalues, ComplexMatrix};
use crate::scalar::{cr, Complex, Real};
use num_traits::{One, Zero};

use super::{ChannelError, ChannelModel, Result};

/// `rate · (A ρ A† − ½{A†A, ρ})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dissipator<R: Real> {
    pub rate: R,
    pub op: ComplexMatrix<R>,
}

fn pauli_z<R: Real>() -> ComplexMatrix<R> {
    ComplexMatrix::diagonal(&[cr(R::one()), cr(-R::one())])
}

/// `|g⟩⟨e|` with the ground state at index 0.
fn lowering<R: Real>() -> ComplexMatrix<R> {
    let z = Complex::zero();
    ComplexMatrix::from_row_major(vec![z, Complex::one(), z, z]).expect("2x2")
}

impl<R: Real> ChannelModel<R> {
    /// Time-local generator `L_t` as a list of dissipators (Hamiltonian parts omitted;
    /// they do not affect divisibility).
    pub fn dissipators(&self, t: R) -> Result<Vec<Dissipator<R>>> {
        let id = ComplexMatrix::<R>::identity(2);
        let z = pauli_z::<R>();
        Ok(match self {
            Self::Dephasing1Q(o) => vec![Dissipator { rate: dephasing_rate(o, t)?, op: z }],
            Self::Dephasing2QIndependent(o) => {
                let g = dephasing_rate(o, t)?;
                vec![Dissipator { rate: g, op: z.kron(&id) }, Dissipator { rate: g, op: id.kron(&z) }]
            }
            Self::Dephasing2QCommon(c) => {
                let (gp, gm) = rate_plus_minus(c, t)?;
                let (za, zb) = (z.kron(&id), id.kron(&z));
                let half = R::lit(0.5);
                vec![
                    Dissipator { rate: half * gm, op: &za + &zb },
                    Dissipator { rate: half * gp, op: &za - &zb },
                ]
            }
            Self::AmplitudeDamping1Q(r) => vec![Dissipator { rate: r.decay_rate(t)?, op: lowering() }],
            Self::AmplitudeDamping2QIndependent(r) => {
                let g = r.decay_rate(t)?;
                let s = lowering::<R>();
                vec![Dissipator { rate: g, op: s.kron(&id) }, Dissipator { rate: g, op: id.kron(&s) }]
            }
        })
    }

    /// `L_t(X)`.
    pub fn generator_action(&self, x: &ComplexMatrix<R>, t: R) -> Result<ComplexMatrix<R>> {
        Ok(apply_dissipators(&self.dissipators(t)?, x))
    }
}

fn apply_dissipators<R: Real>(ds: &[Dissipator<R>], x: &ComplexMatrix<R>) -> ComplexMatrix<R> {
    let half = cr(R::lit(0.5));
    let mut out = ComplexMatrix::zeros(x.dim());
    for d in ds {
        let a = &d.op;
        let ad = a.adjoint();
        let ada = &ad * a;
        let jump = &(a * x) * &ad;
        let anti = &(&ada * x) + &(x * &ada);
        let term = &jump - &anti.scale(half);
        out = &out + &term.scale_real(d.rate);
    }
    out
}

fn lift_to_doubled<R: Real>(ds: &[Dissipator<R>]) -> Vec<Dissipator<R>> {
    let d = ds.first().map(|x| x.op.dim()).unwrap_or(1);
    let id = ComplexMatrix::identity(d);
    ds.iter().map(|x| Dissipator { rate: x.rate, op: x.op.kron(&id) }).collect()
}

fn trace_norm_rate<R: Real>(doubled: &[Dissipator<R>], omega: &ComplexMatrix<R>, eps: R) -> Result<R> {
    let m = omega + &apply_dissipators(doubled, omega).scale_real(eps);
    let ev = hermitian_eigenvalues(&m)?;
    let norm: R = ev.iter().map(|l| l.abs()).sum();
    Ok((norm - R::one()) / eps)
}

/// `g(t) = lim (‖(1 + ε L_t ⊗ 1)|Ω⟩⟨Ω|‖₁ − 1)/ε` on the doubled space,
/// Richardson-extrapolated from `ε` and `ε/2`.
pub fn rhp_g<R: Real>(model: &ChannelModel<R>, t: R, eps: R) -> Result<R> {
    if !(eps >= R::lit(1e-6) && eps <= R::lit(1e-3)) {
        return Err(ChannelError::NotAvailable(format!("ε = {eps} outside [1e-6, 1e-3]")));
    }
    let ds = model.dissipators(t)?;
    if ds.is_empty() {
        return Err(ChannelError::GeneratorUnavailable(model.label().into()));
    }
    let d = model.dim();
    let amp = cr(R::one() / R::from_usize(d).unwrap().sqrt());
    let mut ket = vec![Complex::zero(); d * d];
    for i in 0..d {
        ket[i * d + i] = amp;
    }
    let omega = ComplexMatrix::outer(&ket, &ket);
    let doubled = lift_to_doubled(&ds);
    let g1 = trace_norm_rate(&doubled, &omega, eps)?;
    let g2 = trace_norm_rate(&doubled, &omega, eps * R::lit(0.5))?;
    Ok((R::lit(2.0) * g2 - g1).max(R::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoherence::{AdReservoir, CommonEnvSpec, LorentzianSpec, OhmicSpectrum};

    #[test]
    fn generator_integrates_to_evolution() {
        // d/dt Φ_t(ρ) = L_t Φ_t(ρ)
        let rho = crate::qmath::DensityMatrix::pure(&[cr(0.6f64), cr(0.0), cr(0.0), cr(0.8)]).unwrap();
        let models = [
            ChannelModel::Dephasing2QCommon(CommonEnvSpec::new(3.0, 0.5).unwrap()),
            ChannelModel::AmplitudeDamping2QIndependent(AdReservoir::Lorentzian(LorentzianSpec::resonant(0.3).unwrap())),
        ];
        for m in models {
            for t in [0.5, 2.0] {
                let h = 1e-5;
                let lhs = &m.apply(&rho, t + h).unwrap().into_matrix() - &m.apply(&rho, t - h).unwrap().into_matrix();
                let lhs = lhs.scale_real(0.5 / h);
                let rhs = m.generator_action(m.apply(&rho, t).unwrap().matrix(), t).unwrap();
                assert!(lhs.max_abs_diff(&rhs) < 1e-8, "{}", m.label());
            }
        }
    }

    #[test]
    fn positive_rates_give_zero() {
        let m: ChannelModel<f64> = ChannelModel::Dephasing1Q(OhmicSpectrum::new(1.5).unwrap());
        assert!(rhp_g(&m, 2.0, 1e-4).unwrap().abs() < 1e-8);
    }

    #[test]
    fn single_qubit_negative_rate() {
        let m: ChannelModel<f64> = ChannelModel::Dephasing1Q(OhmicSpectrum::new(3.0).unwrap());
        let g1 = dephasing_rate(&OhmicSpectrum::new(3.0).unwrap(), 2.0).unwrap();
        assert!(g1 < 0.0);
        assert!((rhp_g(&m, 2.0, 1e-4).unwrap() + 2.0 * g1).abs() < 1e-6);
    }

    #[test]
    fn epsilon_range_enforced() {
        let m: ChannelModel<f64> = ChannelModel::Dephasing1Q(OhmicSpectrum::new(3.0).unwrap());
        assert!(rhp_g(&m, 2.0, 1e-1).is_err());
    }
}
