//! Closed forms checked against independent numerical evaluations.

mod support;

use nmq_core::decoherence::{dephasing_rate, delta_cross_talk, gamma_ohmic, CommonEnvSpec, OhmicSpectrum};
use nmq_core::numerics::derivative;
use support::*;

#[test]
fn gamma_matches_spectral_integral() {
    let worst = gamma_worst_relative();
    assert!(worst < 1e-6, "worst relative deviation {worst:e}");
}

#[test]
fn cross_talk_matches_spectral_integral() {
    for (s, ts, t) in [(0.5, 0.25, 3.0), (1.0, 2.0, 1.5), (2.0, 0.25, 6.0), (3.0, 6.0, 4.0), (4.0, 1.0, 10.0)] {
        let spec = CommonEnvSpec::new(s, ts).unwrap();
        let exact = delta_cross_talk(&spec, t).unwrap();
        let quad = 4.0 * spectral(s, |w| one_minus_cos_over_w2(w, t) * (w * ts).cos());
        assert!((exact - quad).abs() < 1e-8 * (1.0 + quad.abs()), "s={s} ts={ts} t={t}: {exact} vs {quad}");
    }
}

#[test]
fn dephasing_rate_is_half_the_derivative() {
    for s in [0.5f64, 1.0, 2.5, 4.0] {
        let o = OhmicSpectrum::new(s).unwrap();
        for t in [0.3, 1.0, 5.0, 14.0] {
            let num = derivative(|x| gamma_ohmic(&o, x).unwrap(), t, 1e-5) / 2.0;
            assert!((num - dephasing_rate(&o, t).unwrap()).abs() < 1e-8, "s={s} t={t}");
        }
    }
}

#[test]
fn band_gap_amplitude_solves_the_memory_equation() {
    for z in [-4.0, 0.0, 1.0] {
        let worst = pbg_worst_deviation(z, 0.005);
        assert!(worst < 1e-4, "z={z}: max deviation {worst:e}");
    }
}

#[test]
fn doubled_space_rate_matches_canonical_rates() {
    for m in &rhp_g_models() {
        let worst = rhp_g_worst(m);
        assert!(worst < 1e-6, "{}: {worst:e}", m.label());
    }
}
