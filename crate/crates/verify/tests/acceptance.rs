//! Exit criteria, one PASS/FAIL line each. Run with
//! `cargo test -p nmq-verify --test acceptance`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nmq_cli::config::SweepConfig;
use nmq_cli::sweep::{detect_crossover, run_sweep, DEFAULT_CROSSOVER_THRESHOLD};
use nmq_cli::SweepOutcome;
use nmq_core::channels::ChannelModel;
use nmq_core::decoherence::{AdReservoir, CommonEnvSpec, LorentzianSpec, OhmicSpectrum};
use nmq_core::measures::{c_ea, n_blp, n_c, n_lfs, n_q, n_rhp, q_cap, Measure, SamplingStrategy, StateSampler};
use nmq_core::numerics::{TailPolicy, TimeWindow};
use nmq_core::qmath::binary_entropy;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

const SEED: u64 = 2013;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dephasing(s: f64) -> ChannelModel<f64> {
    ChannelModel::Dephasing1Q(OhmicSpectrum::new(s).unwrap())
}

fn pair_dephasing(s: f64) -> ChannelModel<f64> {
    ChannelModel::Dephasing2QIndependent(OhmicSpectrum::new(s).unwrap())
}

fn window(t_end: f64) -> TimeWindow<f64> {
    TimeWindow::span(t_end).unwrap()
}

fn sweep(toml: &str) -> Result<(SweepConfig, SweepOutcome), String> {
    let cfg = SweepConfig::parse(toml).map_err(|e| e.to_string())?;
    let out = run_sweep(&cfg, Some(SEED), None).map_err(|e| e.to_string())?;
    if out.failures() > 0 {
        let errs: Vec<_> = out.rows.iter().filter_map(|r| r.error.clone()).collect();
        return Err(errs.join("; "));
    }
    Ok((cfg, out))
}

fn column(out: &SweepOutcome, k: usize) -> Vec<(f64, f64, bool)> {
    out.rows
        .iter()
        .map(|r| {
            let c = r.cells[k].as_ref().unwrap();
            (r.param, c.value, c.diverged)
        })
        .collect()
}

fn dephasing_crossover() -> Outcome {
    let (_, out) = sweep(
        r#"
model = "dephasing_1q"
sweep_parameter = "s"
values = [1.0, 1.5, 2.0, 2.5, 3.0, 4.0]
measures = ["rhp", "blp", "lfs", "cea", "q"]
window = { t_end = 20.0 }
"#,
    )?;
    let mut bad = Vec::new();
    for (k, m) in out.measures.iter().enumerate() {
        for (s, v, _) in column(&out, k) {
            let ok = if s <= 2.0 { v.abs() < 1e-8 } else { v > 1e-6 };
            if !ok {
                bad.push(format!("{m}(s={s}) = {v:e}"));
            }
        }
    }
    check(bad.is_empty(), if bad.is_empty() { "zero for s ≤ 2, positive above".into() } else { bad.join(", ") })
}

fn closed_form_values() -> Outcome {
    let m = dephasing(3.0);
    let w = window(20.0).with_tail(TailPolicy::AnalyticLimit);
    let h2 = |p: f64| binary_entropy(p).unwrap();
    let (e2, e225) = ((-2f64).exp(), (-2.25f64).exp());
    let rhp = n_rhp(&m, &w).map_err(|e| e.to_string())?.value;
    let blp = n_blp(&m, &w, &StateSampler::analytic()).map_err(|e| e.to_string())?.value;
    let ni = n_lfs(&m, &w, &StateSampler::analytic()).map_err(|e| e.to_string())?.value;
    let ni_exact = h2(0.5 + e225 / 2.0) - h2(0.5 + e2 / 2.0);
    check(
        (rhp - 0.25).abs() <= 1e-4 && (blp - (e2 - e225)).abs() <= 1e-5 && (ni - ni_exact).abs() <= 1e-5,
        format!("RHP {rhp:.10}, BLP {blp:.10} (exact {:.10}), N_I {ni:.10} (exact {ni_exact:.10})", e2 - e225),
    )
}

fn capacity_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let s = 0.5 + 0.5 * i as f64;
        let o = dephasing(s);
        for j in 0..5 {
            let t = 0.5 + 4.0 * j as f64;
            let gap = c_ea(&o, t, 64).map_err(|e| e.to_string())?.0 - q_cap(&o, t, 64).map_err(|e| e.to_string())?.0;
            worst = worst.max((gap - 1.0).abs());
        }
    }
    let w = window(20.0);
    let mut chain: f64 = 0.0;
    for m in [dephasing(2.5), dephasing(3.0), dephasing(4.0), pair_dephasing(3.0)] {
        let ni = n_lfs(&m, &w, &StateSampler::analytic()).map_err(|e| e.to_string())?.value;
        let nc = n_c(&m, &w).map_err(|e| e.to_string())?.value;
        let nq = n_q(&m, &w).map_err(|e| e.to_string())?.value;
        chain = chain.max((ni - nc).abs()).max((ni - nq).abs());
    }
    check(worst <= 1e-9 && chain <= 1e-6, format!("max |C_ea − 1 − Q| = {worst:e} on 50 points, max |N_I − N_C|, |N_I − N_Q| = {chain:e}"))
}

fn additivity() -> Outcome {
    let w = window(20.0);
    let sampler = StateSampler::new(SamplingStrategy::RandomOrthogonalPairs, 500, SEED);
    let mixed = StateSampler::new(SamplingStrategy::RandomMixedRank(4), 500, SEED);
    let mut notes = Vec::new();
    let mut ok = true;
    for s in [2.5, 3.0, 4.0] {
        let (one, two) = (dephasing(s), pair_dephasing(s));
        let r1 = n_rhp(&one, &w).map_err(|e| e.to_string())?.value;
        let r2 = n_rhp(&two, &w).map_err(|e| e.to_string())?.value;
        let i1 = n_lfs(&one, &w, &mixed).map_err(|e| e.to_string())?.value;
        let i2 = n_lfs(&two, &w, &mixed).map_err(|e| e.to_string())?.value;
        let b1 = n_blp(&one, &w, &sampler).map_err(|e| e.to_string())?.value;
        let b2 = n_blp(&two, &w, &sampler).map_err(|e| e.to_string())?.value;
        ok &= r2 == 2.0 * r1 && (i2 - 2.0 * i1).abs() <= 1e-4 && (b2 - b1).abs() <= 1e-3;
        notes.push(format!("s={s}: ΔRHP {:e} ΔN_I {:.1e} ΔBLP {:.1e}", r2 - 2.0 * r1, i2 - 2.0 * i1, b2 - b1));
    }
    let ad = AdReservoir::Lorentzian(LorentzianSpec::resonant(3.0).unwrap());
    let (a1, a2) = (ChannelModel::AmplitudeDamping1Q(ad), ChannelModel::AmplitudeDamping2QIndependent(ad));
    let (r1, r2) = (n_rhp(&a1, &window(40.0)).map_err(|e| e.to_string())?, n_rhp(&a2, &window(40.0)).map_err(|e| e.to_string())?);
    ok &= r2.value == 2.0 * r1.value && r2.diverged == r1.diverged;
    notes.push(format!("damping r=3: ΔRHP {:e}", r2.value - 2.0 * r1.value));
    check(ok, notes.join("; "))
}

fn lorentzian_thresholds() -> Outcome {
    let (_, weak) = sweep(
        r#"
model = "amplitude_damping_1q"
reservoir = "lorentzian"
sweep_parameter = "r"
values = [0.25, 1.0]
measures = ["rhp", "blp", "lfs", "cea", "q"]
"#,
    )?;
    let mut bad = Vec::new();
    for (k, m) in weak.measures.iter().enumerate() {
        let (_, v, d) = column(&weak, k)[0];
        if v.abs() >= 1e-8 || d {
            bad.push(format!("{m}(r=0.25) = {v:e}"));
        }
    }
    let rhp1 = column(&weak, 0)[1];
    let blp1 = column(&weak, 1)[1];
    if !rhp1.2 {
        bad.push("RHP(r=1) not flagged diverged".into());
    }
    if !(blp1.1 > 0.0) {
        bad.push(format!("BLP(r=1) = {:e}", blp1.1));
    }
    let (_, strong) = sweep(
        r#"
model = "amplitude_damping_1q"
reservoir = "lorentzian"
sweep_parameter = "r"
values = [20.0, 50.0]
measures = ["q"]
"#,
    )?;
    let q = column(&strong, 0);
    if q[0].1 != 0.0 || !(q[1].1 > 0.0) {
        bad.push(format!("N_Q(20) = {:e}, N_Q(50) = {:e}", q[0].1, q[1].1));
    }
    check(
        bad.is_empty(),
        if bad.is_empty() { format!("BLP(r=1) = {:.4}, N_Q(50) = {:.4}", blp1.1, q[1].1) } else { bad.join(", ") },
    )
}

fn band_gap_crossover() -> Outcome {
    let text = r#"
model = "amplitude_damping_1q"
reservoir = "pbg"
sweep_parameter = "z"
range = { start = 0.5, stop = 2.0, count = 31 }
measures = ["rhp"]
"#;
    let (cfg, out) = sweep(text)?;
    let curve = column(&out, 0);
    let peak = curve.iter().copied().fold((f64::NAN, f64::NEG_INFINITY), |m, (z, v, _)| if v > m.1 { (z, v) } else { m });
    let crossing = detect_crossover(&cfg, Measure::Rhp, DEFAULT_CROSSOVER_THRESHOLD, Some(SEED), None);
    let crossing_ok = matches!(crossing, Ok(z) if (z - 1.7).abs() <= 0.1);
    let peak_ok = (peak.0 - 1.0).abs() <= 0.25;
    let crossing = match crossing {
        Ok(z) => format!("z_c = {z:.3}"),
        Err(e) => e.to_string(),
    };
    check(
        crossing_ok && peak_ok,
        format!(
            "{crossing} (want 1.7 ± 0.1); peak at z = {:.2}, N_RHP = {:.3} (want 1.0 ± 0.25); N_RHP(0.5) = {:.3}, N_RHP(2.0) = {:.3}",
            peak.0,
            peak.1,
            curve[0].1,
            curve[curve.len() - 1].1
        ),
    )
}

fn common_environment() -> Outcome {
    let cfg = SweepConfig::parse(
        r#"
model = "dephasing_2q_common"
sweep_parameter = "s"
range = { start = 0.01, stop = 0.5, count = 50 }
measures = ["rhp"]
base = { t_s = 0.25 }
window = { t_end = 20.0 }
"#,
    )
    .map_err(|e| e.to_string())?;
    let sc = detect_crossover(&cfg, Measure::Rhp, DEFAULT_CROSSOVER_THRESHOLD, None, None);
    let sc_ok = matches!(sc, Ok(s) if (0.03..=0.13).contains(&s));

    let w = window(20.0);
    let sampler = StateSampler::new(SamplingStrategy::RandomOrthogonalPairs, 100, SEED);
    let common = ChannelModel::Dephasing2QCommon(CommonEnvSpec::new(3.0, 1000.0).unwrap());
    let independent = pair_dephasing(3.0);
    let mut worst: f64 = 0.0;
    for m in Measure::ALL {
        let a = m.compute(&common, &w, &sampler).map_err(|e| e.to_string())?.value;
        let b = m.compute(&independent, &w, &sampler).map_err(|e| e.to_string())?.value;
        worst = worst.max((a - b).abs() / b.abs());
    }
    let sc = match sc {
        Ok(s) => format!("s_c = {s:.4}"),
        Err(e) => e.to_string(),
    };
    check(sc_ok && worst <= 1e-2, format!("{sc} (want [0.03, 0.13]); t_s = 1000 worst relative gap {worst:.1e}"))
}

fn oracles() -> Outcome {
    let gamma = support::gamma_worst_relative();
    let pbg = [-4.0, 0.0, 1.0].map(|z| support::pbg_worst_deviation(z, 0.005)).into_iter().fold(0.0, f64::max);
    let rhp_g = support::rhp_g_models().iter().map(support::rhp_g_worst).fold(0.0, f64::max);
    check(
        gamma <= 1e-6 && pbg <= 1e-4 && rhp_g <= 1e-6,
        format!("Γ rel {gamma:.1e}, G_pbg {pbg:.1e}, rhp_g {rhp_g:.1e}"),
    )
}

fn suite<S: Strategy>(strategy: S, case: impl Fn(S::Value) -> support::CaseResult) -> Result<(), String> {
    TestRunner::new(support::proptest_config()).run(&strategy, case).map_err(|e| e.to_string())
}

fn properties() -> Outcome {
    use support::*;
    let results = [
        ("outputs are states", suite((model_strategy(), any::<u64>(), 0.0f64..30.0), |(m, seed, t)| check_outputs_are_states(&m, seed, t))),
        ("Kraus form", suite((model_strategy(), any::<u64>(), 0.0f64..30.0), |(m, seed, t)| check_kraus_form_reproduces_the_map(&m, seed, t))),
        (
            "pure-input entropies",
            suite((model_strategy(), any::<u64>(), 0.0f64..20.0), |(m, seed, t)| check_pure_input_entropies_agree(&m, seed, t)),
        ),
        (
            "information identity",
            suite((model_strategy(), any::<u64>(), 0.0f64..20.0), |(m, seed, t)| check_information_identity(&m, seed, t)),
        ),
        (
            "capacity identity",
            suite((0.2f64..5.0, 0.0f64..20.0, any::<bool>()), |(s, t, two)| check_capacity_identity_for_dephasing(s, t, two)),
        ),
        (
            "contractivity",
            suite((0.2f64..2.0, 0.02f64..0.5, (any::<u64>(), any::<u64>()), 0.0f64..15.0, 0.0f64..15.0), |(s, r, seeds, t1, dt)| {
                check_contractive_under_divisible_dynamics(s, r, seeds, t1, dt)
            }),
        ),
        ("erf reflection", suite((-6.0f64..6.0, -6.0f64..6.0), |(x, y)| check_erf_reflection_identities(x, y))),
    ];
    let failures: Vec<String> = results.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}"))).collect();
    let detail = if failures.is_empty() {
        format!("{} suites × {} cases", results.len(), proptest_config().cases)
    } else {
        failures.join("; ")
    };
    check(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("dephasing crossover", dephasing_crossover, Duration::from_secs(30)),
        ("closed-form values at s = 3", closed_form_values, Duration::from_secs(60)),
        ("capacity identities", capacity_identities, Duration::from_secs(60)),
        ("additivity", additivity, Duration::from_secs(300)),
        ("Lorentzian thresholds", lorentzian_thresholds, Duration::from_secs(120)),
        ("band-gap crossover", band_gap_crossover, Duration::from_secs(300)),
        ("common environment", common_environment, Duration::from_secs(600)),
        ("oracle equivalence", oracles, Duration::from_secs(300)),
        ("property suites", properties, Duration::from_secs(300)),
    ];
    if std::env::args().any(|a| a == "--list") {
        for (k, (name, ..)) in criteria.iter().enumerate() {
            println!("criterion {}: {name}: test", k + 1);
        }
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= *budget => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.1?}, budget {budget:?}")),
            Err(d) => (false, d),
        };
        failed += usize::from(!pass);
        println!("{} {} {name} [{:.1?}]: {detail}", if pass { "PASS" } else { "FAIL" }, k + 1, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
