//! Sweep configuration: file schema, defaults and validation.

use std::path::{Path, PathBuf};

use nmq_core::channels::ChannelModel;
use nmq_core::decoherence::{AdReservoir, CommonEnvSpec, LorentzianSpec, OhmicSpectrum, PbgSpec};
use nmq_core::measures::{Measure, SamplingStrategy, StateSampler};
use nmq_core::numerics::{TailPolicy, TimeWindow, DEFAULT_GRID_POINTS};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable consulted when neither the CLI nor the file gives a seed.
pub const SEED_ENV: &str = "NMQ_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "dephasing_1q")]
    Dephasing1Q,
    #[serde(rename = "dephasing_2q_independent")]
    Dephasing2QIndependent,
    #[serde(rename = "dephasing_2q_common")]
    Dephasing2QCommon,
    #[serde(rename = "amplitude_damping_1q", alias = "ad_1q")]
    AmplitudeDamping1Q,
    #[serde(rename = "amplitude_damping_2q_independent", alias = "ad_2q_independent")]
    AmplitudeDamping2QIndependent,
}

impl ModelKind {
    pub fn is_damping(self) -> bool {
        matches!(self, Self::AmplitudeDamping1Q | Self::AmplitudeDamping2QIndependent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReservoirKind {
    Lorentzian,
    Pbg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "r")]
    R,
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "t_s")]
    Ts,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            Self::S => "s",
            Self::R => "r",
            Self::Z => "z",
            Self::Ts => "t_s",
        }
    }
}

/// Model parameters held fixed during a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BaseParams {
    pub s: f64,
    pub t_s: f64,
    pub r: f64,
    pub z: f64,
    pub delta_l: f64,
}

impl Default for BaseParams {
    fn default() -> Self {
        Self { s: 3.0, t_s: 0.25, r: 1.0, z: 0.0, delta_l: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    #[default]
    Truncate,
    AnalyticLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowConfig {
    pub t_start: Option<f64>,
    /// Defaults to 20 for Ohmic and band-gap baths and 40 for the Lorentzian.
    pub t_end: Option<f64>,
    pub grid_points: Option<usize>,
    pub tail: Tail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplerConfig {
    pub strategy: String,
    pub budget: usize,
    pub seed: Option<u64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { strategy: SamplingStrategy::RandomOrthogonalPairs.to_string(), budget: 100, seed: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    pub path: Option<PathBuf>,
}

/// Evenly spaced values, an alternative to listing them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

/// A parameter sweep as read from a TOML or JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelKind,
    #[serde(default)]
    pub reservoir: Option<ReservoirKind>,
    pub sweep_parameter: SweepParameter,
    #[serde(default)]
    pub values: Vec<f64>,
    #[serde(default)]
    pub range: Option<Range>,
    pub measures: Vec<String>,
    #[serde(default)]
    pub normalize: bool,
    #[serde(default)]
    pub base: BaseParams,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default)]
    pub sampler: SamplerConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl SweepConfig {
    /// Parses TOML, or JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| config_err(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| config_err(e.to_string()))?
        };
        cfg.normalized()
    }

    pub fn load(path: &Path) -> Result<(Self, String), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        Ok((Self::parse(&text)?, text))
    }

    /// Expands `range`, then validates.
    fn normalized(mut self) -> Result<Self, CliError> {
        match (self.range.take(), self.values.is_empty()) {
            (Some(_), false) => return Err(config_err("give either `values` or `range`, not both")),
            (Some(r), true) => {
                if r.count < 1 || !(r.start.is_finite() && r.stop.is_finite()) {
                    return Err(config_err("`range` needs finite bounds and count ≥ 1"));
                }
                self.values = if r.count == 1 {
                    vec![r.start]
                } else {
                    let h = (r.stop - r.start) / (r.count - 1) as f64;
                    (0..r.count).map(|k| if k + 1 == r.count { r.stop } else { r.start + h * k as f64 }).collect()
                };
            }
            (None, _) => {}
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.values.is_empty() {
            return Err(config_err("`values` is empty"));
        }
        if self.values.iter().any(|v| !v.is_finite()) || self.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(config_err("`values` must be finite and strictly increasing"));
        }
        self.measure_list()?;
        match (self.model.is_damping(), self.reservoir) {
            (true, None) => return Err(config_err("amplitude-damping models need `reservoir`")),
            (false, Some(_)) => return Err(config_err("`reservoir` only applies to amplitude-damping models")),
            _ => {}
        }
        let legal = match self.sweep_parameter {
            SweepParameter::S => !self.model.is_damping(),
            SweepParameter::Ts => self.model == ModelKind::Dephasing2QCommon,
            SweepParameter::R => self.reservoir == Some(ReservoirKind::Lorentzian),
            SweepParameter::Z => self.reservoir == Some(ReservoirKind::Pbg),
        };
        if !legal {
            return Err(config_err(format!("cannot sweep `{}` for this model", self.sweep_parameter.name())));
        }
        for &v in &self.values {
            self.model_at(v)?;
        }
        self.time_window()?;
        self.strategy()?;
        Ok(())
    }

    pub fn measure_list(&self) -> Result<Vec<Measure>, CliError> {
        if self.measures.is_empty() {
            return Err(config_err("`measures` is empty"));
        }
        let mut out: Vec<Measure> = Vec::new();
        for m in &self.measures {
            let m: Measure = m.parse().map_err(|e: nmq_core::measures::MeasureError| config_err(e.to_string()))?;
            if out.contains(&m) {
                return Err(config_err(format!("measure `{m}` listed twice")));
            }
            out.push(m);
        }
        Ok(out)
    }

    pub fn strategy(&self) -> Result<SamplingStrategy, CliError> {
        self.sampler.strategy.parse().map_err(|e: nmq_core::measures::MeasureError| config_err(e.to_string()))
    }

    /// The channel model with the swept parameter set to `value`.
    pub fn model_at(&self, value: f64) -> Result<ChannelModel<f64>, CliError> {
        let mut p = self.base;
        match self.sweep_parameter {
            SweepParameter::S => p.s = value,
            SweepParameter::R => p.r = value,
            SweepParameter::Z => p.z = value,
            SweepParameter::Ts => p.t_s = value,
        }
        let bad = |e: nmq_core::decoherence::DecoherenceError| config_err(format!("{} = {value}: {e}", self.sweep_parameter.name()));
        let reservoir = || -> Result<AdReservoir<f64>, CliError> {
            Ok(match self.reservoir {
                Some(ReservoirKind::Pbg) => AdReservoir::Pbg(PbgSpec::new(p.z).map_err(bad)?),
                _ => AdReservoir::Lorentzian(LorentzianSpec::new(p.r, p.delta_l).map_err(bad)?),
            })
        };
        Ok(match self.model {
            ModelKind::Dephasing1Q => ChannelModel::Dephasing1Q(OhmicSpectrum::new(p.s).map_err(bad)?),
            ModelKind::Dephasing2QIndependent => ChannelModel::Dephasing2QIndependent(OhmicSpectrum::new(p.s).map_err(bad)?),
            ModelKind::Dephasing2QCommon => ChannelModel::Dephasing2QCommon(CommonEnvSpec::new(p.s, p.t_s).map_err(bad)?),
            ModelKind::AmplitudeDamping1Q => ChannelModel::AmplitudeDamping1Q(reservoir()?),
            ModelKind::AmplitudeDamping2QIndependent => ChannelModel::AmplitudeDamping2QIndependent(reservoir()?),
        })
    }

    pub fn time_window(&self) -> Result<TimeWindow<f64>, CliError> {
        let default_end = if self.reservoir == Some(ReservoirKind::Lorentzian) { 40.0 } else { 20.0 };
        let w = &self.window;
        let tw = TimeWindow::new(
            w.t_start.unwrap_or(0.0),
            w.t_end.unwrap_or(default_end),
            w.grid_points.unwrap_or(DEFAULT_GRID_POINTS),
        )
        .map_err(|e| config_err(e.to_string()))?;
        Ok(tw.with_tail(match w.tail {
            Tail::Truncate => TailPolicy::Truncate,
            Tail::AnalyticLimit => TailPolicy::AnalyticLimit,
        }))
    }

    /// Seed precedence: explicit override, then the file, then `NMQ_SEED`.
    pub fn resolve_seed(&self, cli: Option<u64>) -> Result<Option<u64>, CliError> {
        if let Some(s) = cli.or(self.sampler.seed) {
            return Ok(Some(s));
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map(Some).map_err(|_| config_err(format!("{SEED_ENV}={v} is not an integer"))),
            Err(_) => Ok(None),
        }
    }

    /// The sampler for a sweep, failing when a sampled measure has no seed.
    pub fn sampler(&self, seed: Option<u64>) -> Result<StateSampler, CliError> {
        let needs_seed = self.measure_list()?.iter().any(Measure::is_sampled)
            && self.strategy()? != SamplingStrategy::AnalyticCandidates;
        let seed = match seed {
            Some(s) => s,
            None if needs_seed => {
                return Err(config_err(format!("sampled measures need a seed (`sampler.seed`, --seed or {SEED_ENV})")))
            }
            None => 0,
        };
        Ok(StateSampler::new(self.strategy()?, self.sampler.budget, seed))
    }
}
