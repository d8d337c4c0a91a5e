//! Presets reproducing the parameter grids and windows of the published figures.

use crate::config::{
    BaseParams, Format, ModelKind, OutputConfig, ReservoirKind, SamplerConfig, SweepConfig, SweepParameter, WindowConfig,
};
use crate::CliError;

/// Seed used by the presets unless one is given explicitly.
pub const PRESET_SEED: u64 = 2013;

fn all_measures() -> Vec<String> {
    ["rhp", "blp", "lfs", "cea", "q"].iter().map(|s| s.to_string()).collect()
}

fn steps(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|k| ((start + step * k as f64) * 1e6).round() / 1e6).collect()
}

fn preset(model: ModelKind, reservoir: Option<ReservoirKind>, parameter: SweepParameter, values: Vec<f64>, base: BaseParams) -> SweepConfig {
    SweepConfig {
        model,
        reservoir,
        sweep_parameter: parameter,
        values,
        range: None,
        measures: all_measures(),
        normalize: true,
        base,
        window: WindowConfig::default(),
        sampler: SamplerConfig { seed: Some(PRESET_SEED), ..SamplerConfig::default() },
        output: OutputConfig { format: Format::Csv, path: None },
    }
}

/// Panels of figure `k` as `(suffix, config)`; single-panel figures use an empty suffix.
pub fn figure(k: u8) -> Result<Vec<(String, SweepConfig)>, CliError> {
    let base = BaseParams::default();
    Ok(match k {
        // single dephasing qubit against Ohmicity, window [0, 20]
        1 => vec![(String::new(), preset(ModelKind::Dephasing1Q, None, SweepParameter::S, steps(0.5, 6.0, 0.1), base))],
        // common bath for three transit times
        2 => [0.25, 2.0, 6.0]
            .iter()
            .map(|&ts| {
                let cfg = preset(
                    ModelKind::Dephasing2QCommon,
                    None,
                    SweepParameter::S,
                    steps(0.05, 5.0, 0.05),
                    BaseParams { t_s: ts, ..base },
                );
                (format!("_ts{ts}"), cfg)
            })
            .collect(),
        // amplitude damping: Lorentzian on [0, 40], band gap on [0, 20]
        3 => vec![
            (
                "_lorentzian".into(),
                preset(ModelKind::AmplitudeDamping1Q, Some(ReservoirKind::Lorentzian), SweepParameter::R, steps(0.1, 50.0, 0.1), base),
            ),
            (
                "_pbg".into(),
                preset(ModelKind::AmplitudeDamping1Q, Some(ReservoirKind::Pbg), SweepParameter::Z, steps(-4.0, 2.0, 0.05), base),
            ),
        ],
        _ => return Err(CliError::Config(format!("no figure preset {k} (choose 1, 2 or 3)"))),
    })
}
