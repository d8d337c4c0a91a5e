//! Oracles and property checks shared by the test suites and the acceptance run.
#![allow(dead_code)]

use std::f64::consts::PI;

use nmq_core::channels::{rhp_g, ChannelModel};
use nmq_core::decoherence::{g_pbg, gamma_ohmic, AdReservoir, CommonEnvSpec, LorentzianSpec, OhmicSpectrum, PbgSpec};
use nmq_core::measures::{c_ea, coherent_info, mutual_info_channel, q_cap, random_mixed};
use nmq_core::numerics::{complex_erf, integrate_adaptive};
use nmq_core::qmath::{hermitian_eigenvalues, trace_distance, von_neumann_entropy, DensityMatrix};
use nmq_core::Complex;
use proptest::prelude::*;
use proptest::test_runner::{RngAlgorithm, RngSeed, TestCaseError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ---- oracles ----

const OMEGA_MAX: f64 = 80.0;

/// `∫_0^∞ J(ω) k(ω) dω` with `J(ω) = ω^s e^{−ω}`, split into unit cells so
/// every cell sees at most a few oscillations.
pub fn spectral(s: f64, k: impl Fn(f64) -> f64) -> f64 {
    let cells = 400;
    let h = OMEGA_MAX / cells as f64;
    (0..cells)
        .map(|i| {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            integrate_adaptive(|w: f64| w.powf(s) * (-w).exp() * k(w), a, b, 1e-12, 1e-16).unwrap()
        })
        .sum()
}

pub fn one_minus_cos_over_w2(w: f64, t: f64) -> f64 {
    let x = (0.5 * w * t).sin();
    2.0 * x * x / (w * w)
}

pub const GAMMA_POINTS: [(f64, f64); 20] = [
    (0.3, 0.5), (0.5, 4.0), (0.8, 12.0), (1.0, 1.0), (1.0, 19.0), (1.3, 2.5), (1.5, 7.0), (1.9, 0.2),
    (2.0, 3.0), (2.2, 15.0), (2.5, 1.7), (2.7, 9.5), (3.0, 1.732_050_807_568_877_2), (3.0, 20.0), (3.5, 0.9), (3.8, 5.0),
    (4.0, 2.2), (4.4, 11.0), (5.0, 0.6), (5.0, 17.0),
];

/// Largest relative deviation of the closed-form `Γ` from quadrature over `GAMMA_POINTS`.
pub fn gamma_worst_relative() -> f64 {
    GAMMA_POINTS
        .iter()
        .map(|&(s, t)| {
            let exact = gamma_ohmic(&OhmicSpectrum::new(s).unwrap(), t).unwrap();
            let quad = 2.0 * spectral(s, |w| one_minus_cos_over_w2(w, t));
            ((exact - quad) / quad).abs()
        })
        .fold(0.0, f64::max)
}

/// Solves `Ġ = −∫_0^t f(t−τ) G(τ) dτ` with `f(τ) = e^{−iπ/4} e^{izτ} / √(πτ)`:
/// product integration of the `τ^{−1/2}` kernel against piecewise-linear
/// `e^{iz(t−τ)} G(τ)`, stepped by a trapezoidal predictor-corrector.
pub fn volterra_pbg(z: f64, t_end: f64, h: f64) -> Vec<Complex<f64>> {
    let n = (t_end / h).round() as usize;
    let c = Complex::from_polar(1.0 / PI.sqrt(), -PI / 4.0);
    // cell j spans u = t_m − τ ∈ [(j−1)h, jh]; weights of the nodes at u = jh and u = (j−1)h
    let (mut wa, mut wb) = (vec![0.0; n + 1], vec![0.0; n + 1]);
    for j in 1..=n {
        let (a, b) = (j as f64 * h, (j - 1) as f64 * h);
        let i0 = 2.0 * (a.sqrt() - b.sqrt());
        let i1 = 2.0 / 3.0 * (a.powf(1.5) - b.powf(1.5));
        wa[j] = (i1 - b * i0) / h;
        wb[j] = (a * i0 - i1) / h;
    }
    let phase: Vec<Complex<f64>> = (0..=n).map(|j| Complex::from_polar(1.0, z * j as f64 * h)).collect();
    let mut g = vec![Complex::new(0.0, 0.0); n + 1];
    let mut d = g.clone();
    g[0] = Complex::new(1.0, 0.0);
    let rhs = |g: &[Complex<f64>], m: usize| -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for j in 1..=m {
            acc += g[m - j] * phase[j] * wa[j] + g[m - j + 1] * phase[j - 1] * wb[j];
        }
        -c * acc
    };
    for m in 1..=n {
        let mut next = g[m - 1] + d[m - 1] * h;
        for _ in 0..4 {
            g[m] = next;
            d[m] = rhs(&g, m);
            next = g[m - 1] + (d[m - 1] + d[m]) * (h / 2.0);
        }
        g[m] = next;
        d[m] = rhs(&g, m);
    }
    g
}

/// Largest `|G − G_volterra|` on `[0, 20]`, the integrator extrapolated from steps `h` and `h/2`.
pub fn pbg_worst_deviation(z: f64, h: f64) -> f64 {
    let coarse = volterra_pbg(z, 20.0, h);
    let fine = volterra_pbg(z, 20.0, h / 2.0);
    let spec = PbgSpec::new(z).unwrap();
    let mut worst: f64 = 0.0;
    for (k, gc) in coarse.iter().enumerate() {
        let extrapolated = (fine[2 * k] * 4.0 - gc) / 3.0;
        let exact = g_pbg(&spec, k as f64 * h).unwrap();
        worst = worst.max((extrapolated - exact).norm());
    }
    worst
}

pub const RHP_G_TIMES: [f64; 10] = [0.35, 0.9, 1.4, 2.1, 2.9, 3.8, 5.3, 7.7, 11.0, 15.5];

pub fn rhp_g_models() -> [ChannelModel<f64>; 5] {
    [
        ChannelModel::Dephasing1Q(OhmicSpectrum::new(3.0).unwrap()),
        ChannelModel::Dephasing2QIndependent(OhmicSpectrum::new(4.0).unwrap()),
        ChannelModel::Dephasing2QCommon(CommonEnvSpec::new(2.5, 0.25).unwrap()),
        ChannelModel::AmplitudeDamping1Q(AdReservoir::Lorentzian(LorentzianSpec::new(2.0, 0.3).unwrap())),
        ChannelModel::AmplitudeDamping2QIndependent(AdReservoir::Pbg(PbgSpec::new(-1.0).unwrap())),
    ]
}

/// Largest gap between the doubled-space `g(t)` and `Σ w·max(0, −γ)`.
pub fn rhp_g_worst(m: &ChannelModel<f64>) -> f64 {
    let rates = m.rate_channels().unwrap();
    RHP_G_TIMES
        .iter()
        .map(|&t| {
            let formula: f64 = rates.iter().map(|w| w.weight * (-w.rate.eval(t)).max(0.0)).sum();
            (rhp_g(m, t, 1e-4).unwrap() - formula).abs()
        })
        .fold(0.0, f64::max)
}

// ---- properties ----

pub fn proptest_config() -> ProptestConfig {
    ProptestConfig {
        cases: 96,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn model_strategy() -> impl Strategy<Value = ChannelModel<f64>> {
    prop_oneof![
        (0.2f64..5.0).prop_map(|s| ChannelModel::Dephasing1Q(OhmicSpectrum::new(s).unwrap())),
        (0.2f64..5.0).prop_map(|s| ChannelModel::Dephasing2QIndependent(OhmicSpectrum::new(s).unwrap())),
        (0.2f64..5.0, 0.1f64..10.0).prop_map(|(s, ts)| ChannelModel::Dephasing2QCommon(CommonEnvSpec::new(s, ts).unwrap())),
        (0.05f64..30.0, -2.0f64..2.0).prop_map(|(r, d)| {
            ChannelModel::AmplitudeDamping1Q(AdReservoir::Lorentzian(LorentzianSpec::new(r, d).unwrap()))
        }),
        (-10.0f64..2.0).prop_map(|z| ChannelModel::AmplitudeDamping2QIndependent(AdReservoir::Pbg(PbgSpec::new(z).unwrap()))),
    ]
}

pub fn state(dim: usize, seed: u64) -> DensityMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = 1 + (seed as usize % dim);
    random_mixed(dim, rank, &mut rng).unwrap()
}

pub type CaseResult = Result<(), TestCaseError>;

pub fn check_outputs_are_states(m: &ChannelModel<f64>, seed: u64, t: f64) -> CaseResult {
    let out = m.apply(&state(m.dim(), seed), t).unwrap();
    prop_assert!(out.matrix().hermiticity_defect() < 1e-12);
    prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
    let ev = hermitian_eigenvalues(out.matrix()).unwrap();
    prop_assert!(*ev.last().unwrap() > -1e-12);
    Ok(())
}

pub fn check_kraus_form_reproduces_the_map(m: &ChannelModel<f64>, seed: u64, t: f64) -> CaseResult {
    let rho = state(m.dim(), seed);
    let k = m.kraus_at(t).unwrap();
    prop_assert!(k.completeness_defect() < 1e-10);
    let diff = k.apply(rho.matrix()).max_abs_diff(m.apply(&rho, t).unwrap().matrix());
    prop_assert!(diff < 1e-10, "{} {}", m.label(), diff);
    Ok(())
}

/// For a pure input, `S(Φρ) = S(Ẽρ)`.
pub fn check_pure_input_entropies_agree(m: &ChannelModel<f64>, seed: u64, t: f64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = random_mixed(m.dim(), 1, &mut rng).unwrap();
    let so = von_neumann_entropy(&m.apply(&rho, t).unwrap()).unwrap();
    let se = von_neumann_entropy(&m.complementary_apply(&rho, t).unwrap()).unwrap();
    prop_assert!((so - se).abs() < 1e-8);
    Ok(())
}

pub fn check_information_identity(m: &ChannelModel<f64>, seed: u64, t: f64) -> CaseResult {
    let rho = state(m.dim(), seed);
    let s = von_neumann_entropy(&rho).unwrap();
    let i = mutual_info_channel(m, &rho, t).unwrap();
    let ic = coherent_info(m, &rho, t).unwrap();
    prop_assert!((i - s - ic).abs() < 1e-10);
    prop_assert!(i >= -1e-10 && i <= 2.0 * (m.dim() as f64).log2() + 1e-10);
    Ok(())
}

pub fn check_capacity_identity_for_dephasing(s: f64, t: f64, two: bool) -> CaseResult {
    let o = OhmicSpectrum::new(s).unwrap();
    let m = if two { ChannelModel::Dephasing2QIndependent(o) } else { ChannelModel::Dephasing1Q(o) };
    let gap = c_ea(&m, t, 64).unwrap().0 - q_cap(&m, t, 64).unwrap().0;
    let expected = if two { 2.0 } else { 1.0 };
    prop_assert!((gap - expected).abs() < 1e-9);
    Ok(())
}

pub fn check_contractive_under_divisible_dynamics(s: f64, r: f64, seeds: (u64, u64), t1: f64, dt: f64) -> CaseResult {
    let models = [
        ChannelModel::Dephasing1Q(OhmicSpectrum::new(s).unwrap()),
        ChannelModel::Dephasing2QIndependent(OhmicSpectrum::new(s).unwrap()),
        ChannelModel::AmplitudeDamping1Q(AdReservoir::Lorentzian(LorentzianSpec::resonant(r).unwrap())),
    ];
    for m in models {
        let (a, b) = (state(m.dim(), seeds.0), state(m.dim(), seeds.1));
        let d = |t| trace_distance(&m.apply(&a, t).unwrap(), &m.apply(&b, t).unwrap()).unwrap();
        prop_assert!(d(t1 + dt) <= d(t1) + 1e-12, "{}", m.label());
        prop_assert!(d(t1) <= trace_distance(&a, &b).unwrap() + 1e-12);
    }
    Ok(())
}

pub fn check_erf_reflection_identities(x: f64, y: f64) -> CaseResult {
    let z = Complex::new(x, y);
    let e = complex_erf(z).unwrap();
    let scale = 1.0 + e.norm();
    prop_assert!((complex_erf(-z).unwrap() + e).norm() < 1e-12 * scale);
    prop_assert!((complex_erf(z.conj()).unwrap() - e.conj()).norm() < 1e-12 * scale);
    Ok(())
}
