use crate::decoherence::{
    cross_rate_of, delta_cross_talk, delta_limit, dephasing_rate, gamma_limit, gamma_ohmic, AdReservoir,
    CommonEnvSpec, OhmicSpectrum, RateFunction,
};
use crate::qmath::{ComplexMatrix, DensityMatrix};
use crate::scalar::{cr, Complex, Real};

use super::{ChannelError, Result};

/// One of the five analytic channel families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel<R: Real> {
    Dephasing1Q(OhmicSpectrum<R>),
    Dephasing2QIndependent(OhmicSpectrum<R>),
    Dephasing2QCommon(CommonEnvSpec<R>),
    AmplitudeDamping1Q(AdReservoir<R>),
    AmplitudeDamping2QIndependent(AdReservoir<R>),
}

/// A decay rate with its weight in the RHP integral.
#[derive(Debug, Clone)]
pub struct WeightedRate<R: Real> {
    pub weight: R,
    pub rate: RateFunction<R>,
}

impl<R: Real> ChannelModel<R> {
    pub fn dim(&self) -> usize {
        match self {
            Self::Dephasing1Q(_) | Self::AmplitudeDamping1Q(_) => 2,
            _ => 4,
        }
    }

    pub fn is_dephasing(&self) -> bool {
        matches!(self, Self::Dephasing1Q(_) | Self::Dephasing2QIndependent(_) | Self::Dephasing2QCommon(_))
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dim() == 4
    }

    /// The single-qubit factor of an independent two-qubit model.
    pub fn single_qubit_factor(&self) -> Option<Self> {
        match *self {
            Self::Dephasing2QIndependent(o) => Some(Self::Dephasing1Q(o)),
            Self::AmplitudeDamping2QIndependent(r) => Some(Self::AmplitudeDamping1Q(r)),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Dephasing1Q(_) => "dephasing_1q",
            Self::Dephasing2QIndependent(_) => "dephasing_2q_independent",
            Self::Dephasing2QCommon(_) => "dephasing_2q_common",
            Self::AmplitudeDamping1Q(_) => "amplitude_damping_1q",
            Self::AmplitudeDamping2QIndependent(_) => "amplitude_damping_2q_independent",
        }
    }

    pub(crate) fn check_dim(&self, rho: &DensityMatrix<R>) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(ChannelError::DimensionMismatch { expected: self.dim(), got: rho.dim() });
        }
        Ok(())
    }

    /// `(Γ, Γ₊, Γ₋)` for the dephasing families; independent baths have `Γ± = 2Γ`.
    pub fn dephasing_exponents(&self, t: R) -> Result<Option<(R, R, R)>> {
        let two = R::lit(2.0);
        Ok(match self {
            Self::Dephasing1Q(o) | Self::Dephasing2QIndependent(o) => {
                let g = gamma_ohmic(o, t)?;
                Some((g, two * g, two * g))
            }
            Self::Dephasing2QCommon(c) => {
                let g = gamma_ohmic(&c.ohmic, t)?;
                let d = delta_cross_talk(c, t)?;
                Some((g, two * g + d, two * g - d))
            }
            _ => None,
        })
    }

    /// `t → ∞` limit of the dephasing exponents, where it exists.
    pub fn dephasing_exponents_limit(&self) -> Option<(R, R, R)> {
        let two = R::lit(2.0);
        match self {
            Self::Dephasing1Q(o) | Self::Dephasing2QIndependent(o) => gamma_limit(o).map(|g| (g, two * g, two * g)),
            Self::Dephasing2QCommon(c) => {
                let g = gamma_limit(&c.ohmic)?;
                let d = delta_limit(c)?;
                Some((g, two * g + d, two * g - d))
            }
            _ => None,
        }
    }

    /// Schur-multiplier mask of a dephasing model at time `t`.
    pub fn dephasing_mask(&self, t: R) -> Result<Option<ComplexMatrix<R>>> {
        let Some(ex) = self.dephasing_exponents(t)? else { return Ok(None) };
        Ok(Some(mask_from_exponents(self.dim(), ex)?))
    }

    /// Mask built from the `t → ∞` exponents.
    pub fn dephasing_mask_limit(&self) -> Result<Option<ComplexMatrix<R>>> {
        match self.dephasing_exponents_limit() {
            Some(ex) => Ok(Some(mask_from_exponents(self.dim(), ex)?)),
            None => Ok(None),
        }
    }

    /// `G(t)` for the amplitude-damping families.
    pub fn amplitude(&self, t: R) -> Result<Option<Complex<R>>> {
        match self {
            Self::AmplitudeDamping1Q(r) | Self::AmplitudeDamping2QIndependent(r) => Ok(Some(r.g(t)?)),
            _ => Ok(None),
        }
    }

    /// Exact evolution `Φ_t(ρ0)`.
    pub fn apply(&self, rho: &DensityMatrix<R>, t: R) -> Result<DensityMatrix<R>> {
        self.check_dim(rho)?;
        if let Some(mask) = self.dephasing_mask(t)? {
            let out = rho.matrix().map(|i, j, z| z * mask[(i, j)]);
            return Ok(DensityMatrix::from_matrix_unchecked(out));
        }
        let g = self.amplitude(t)?.expect("amplitude-damping model");
        Ok(DensityMatrix::from_matrix_unchecked(self.apply_with_amplitude(rho.matrix(), g)))
    }

    /// Amplitude-damping action for a given `G`; index 0 is the ground state.
    pub(crate) fn apply_with_amplitude(&self, m: &ComplexMatrix<R>, g: Complex<R>) -> ComplexMatrix<R> {
        if m.dim() == 2 {
            return ad_single(m, g);
        }
        ad_pair(m, g)
    }

    /// Decay rates and their RHP weights.
    pub fn rate_channels(&self) -> Result<Vec<WeightedRate<R>>> {
        let two = R::lit(2.0);
        Ok(match *self {
            Self::Dephasing1Q(o) => vec![WeightedRate { weight: two, rate: dephasing_rate_fn(o) }],
            Self::Dephasing2QIndependent(o) => vec![
                WeightedRate { weight: two, rate: dephasing_rate_fn(o) },
                WeightedRate { weight: two, rate: dephasing_rate_fn(o) },
            ],
            Self::Dephasing2QCommon(c) => {
                vec![WeightedRate { weight: two, rate: common_rate_fn(c, true) }, WeightedRate { weight: two, rate: common_rate_fn(c, false) }]
            }
            Self::AmplitudeDamping1Q(r) => vec![WeightedRate { weight: R::one(), rate: ad_rate_fn(r)? }],
            Self::AmplitudeDamping2QIndependent(r) => vec![
                WeightedRate { weight: R::one(), rate: ad_rate_fn(r)? },
                WeightedRate { weight: R::one(), rate: ad_rate_fn(r)? },
            ],
        })
    }
}

fn check_exponent<R: Real>(x: R) -> Result<R> {
    if !(x >= -R::tol(1e-12)) {
        return Err(ChannelError::BranchError(format!("negative decoherence exponent {x}")));
    }
    Ok((-x).exp().min(R::one()))
}

pub(crate) fn mask_from_exponents<R: Real>(dim: usize, (g, gp, gm): (R, R, R)) -> Result<ComplexMatrix<R>> {
    let single = check_exponent(g)?;
    if dim == 2 {
        let one = cr(R::one());
        return Ok(ComplexMatrix::from_fn(2, |i, j| if i == j { one } else { cr(single) }));
    }
    let (plus, minus) = (check_exponent(gp)?, check_exponent(gm)?);
    Ok(ComplexMatrix::from_fn(4, |i, j| {
        let v = match (i, j) {
            _ if i == j => R::one(),
            (0, 3) | (3, 0) => minus,
            (1, 2) | (2, 1) => plus,
            _ => single,
        };
        cr(v)
    }))
}

fn ad_single<R: Real>(m: &ComplexMatrix<R>, g: Complex<R>) -> ComplexMatrix<R> {
    let p = g.norm_sqr();
    let excited = m[(1, 1)].re * p;
    ComplexMatrix::from_row_major(vec![
        cr(R::one() - excited),
        m[(0, 1)] * g.conj(),
        m[(1, 0)] * g,
        cr(excited),
    ])
    .expect("2x2")
}

/// Element formulas for two qubits in independent baths (basis |gg⟩, |ge⟩, |eg⟩, |ee⟩).
fn ad_pair<R: Real>(m: &ComplexMatrix<R>, g: Complex<R>) -> ComplexMatrix<R> {
    let p = g.norm_sqr();
    let q = R::one() - p;
    let mut o = ComplexMatrix::zeros(4);
    let r33 = p * p * m[(3, 3)].re;
    let r22 = p * q * m[(3, 3)].re + p * m[(2, 2)].re;
    let r11 = p * q * m[(3, 3)].re + p * m[(1, 1)].re;
    o[(3, 3)] = cr(r33);
    o[(2, 2)] = cr(r22);
    o[(1, 1)] = cr(r11);
    o[(0, 0)] = cr(R::one() - (r33 + r22 + r11));

    let lower = [
        ((3, 2), m[(3, 2)] * g * cr(p)),
        ((3, 1), m[(3, 1)] * g * cr(p)),
        ((3, 0), m[(3, 0)] * g * g),
        ((2, 1), m[(2, 1)] * cr(p)),
        ((2, 0), m[(3, 1)] * g * cr(q) + m[(2, 0)] * g),
        ((1, 0), m[(3, 2)] * g * cr(q) + m[(1, 0)] * g),
    ];
    for ((i, j), v) in lower {
        o[(i, j)] = v;
        o[(j, i)] = v.conj();
    }
    o
}

fn dephasing_rate_fn<R: Real>(o: OhmicSpectrum<R>) -> RateFunction<R> {
    let half = R::lit(0.5);
    RateFunction::new("gamma1", move |t| dephasing_rate(&o, t).unwrap_or_else(|_| R::nan()))
        .with_primitive(move |t| half * gamma_ohmic(&o, t).unwrap_or_else(|_| R::nan()), gamma_limit(&o).map(|g| g * half))
}

fn common_rate_fn<R: Real>(c: CommonEnvSpec<R>, plus: bool) -> RateFunction<R> {
    let sign = if plus { R::one() } else { -R::one() };
    let quarter = R::lit(0.25);
    let two = R::lit(2.0);
    let limit = gamma_limit(&c.ohmic).zip(delta_limit(&c)).map(|(g, d)| quarter * (two * g + sign * d));
    RateFunction::new(if plus { "gamma_plus" } else { "gamma_minus" }, move |t| {
        dephasing_rate(&c.ohmic, t).unwrap_or_else(|_| R::nan()) + sign * cross_rate_of(&c, t)
    })
    .with_primitive(
        move |t| {
            let g = gamma_ohmic(&c.ohmic, t).unwrap_or_else(|_| R::nan());
            let d = delta_cross_talk(&c, t).unwrap_or_else(|_| R::nan());
            quarter * (two * g + sign * d)
        },
        limit,
    )
}

fn ad_rate_fn<R: Real>(r: AdReservoir<R>) -> Result<RateFunction<R>> {
    let ev = r.evaluator()?;
    let (ev1, ev2, ev3) = (ev.clone(), ev.clone(), ev);
    let nan = || (Complex::new(R::nan(), R::nan()), Complex::new(R::nan(), R::nan()));
    Ok(RateFunction::new("gamma1", move |t| {
        let (g, gd) = ev1(t).unwrap_or_else(|_| nan());
        -R::lit(2.0) * (gd * g.conj()).re / g.norm_sqr()
    })
    .with_sign_proxy(move |t| {
        let (g, gd) = ev2(t).unwrap_or_else(|_| nan());
        -(gd * g.conj()).re
    })
    .with_primitive(
        move |t| {
            let (g, _) = ev3(t).unwrap_or_else(|_| nan());
            -g.norm_sqr().ln()
        },
        None,
    )
    .with_amplitude(move |t| r.g(t).map(|g| g.norm()).unwrap_or_else(|_| R::nan())))
}
