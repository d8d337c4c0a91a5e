//! Running sweeps and locating crossovers.

use nmq_core::measures::{Measure, MeasureResult, StateSampler};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;
use crate::CliError;

/// One measure's outcome in one row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureCell {
    pub measure: String,
    pub value: f64,
    pub diverged: bool,
    pub intervals: usize,
    pub argmax: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<f64>,
}

impl MeasureCell {
    fn from_result(m: Measure, r: &MeasureResult<f64>) -> Self {
        Self {
            measure: m.id().into(),
            value: r.value,
            diverged: r.diverged,
            intervals: r.intervals.len(),
            argmax: r.argmax_label().into(),
            normalized: None,
        }
    }
}

/// All measures at one parameter value. Failed measures leave `None` and
/// contribute to `error`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub param: f64,
    pub cells: Vec<Option<MeasureCell>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub measures: Vec<Measure>,
    pub rows: Vec<ResultRow>,
}

impl SweepOutcome {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

/// SplitMix64 finalizer, used to derive per-row seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for the row at `value`: independent of scheduling and of the other rows.
pub fn row_seed(global: u64, value: f64) -> u64 {
    splitmix64(global ^ value.to_bits())
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn compute_row(cfg: &SweepConfig, measures: &[Measure], sampler: &StateSampler, value: f64) -> ResultRow {
    let sampler = StateSampler { seed: row_seed(sampler.seed, value), ..*sampler };
    let mut errors = Vec::new();
    let cells = match (cfg.model_at(value), cfg.time_window()) {
        (Ok(model), Ok(window)) => measures
            .iter()
            .map(|m| match m.compute(&model, &window, &sampler) {
                Ok(r) => Some(MeasureCell::from_result(*m, &r)),
                Err(e) => {
                    errors.push(format!("{m}: {e}"));
                    None
                }
            })
            .collect(),
        (Err(e), _) | (_, Err(e)) => {
            errors.push(e.to_string());
            vec![None; measures.len()]
        }
    };
    ResultRow { param: value, cells, error: (!errors.is_empty()).then(|| errors.join("; ")) }
}

/// Computes every requested measure at every value, `jobs` rows at a time.
/// Rows come back in input order whatever the scheduling.
/// `seed` takes precedence over `sampler.seed` in the file.
pub fn run_sweep(cfg: &SweepConfig, seed: Option<u64>, jobs: Option<usize>) -> Result<SweepOutcome, CliError> {
    cfg.validate()?;
    let seed = seed.or(cfg.sampler.seed);
    let measures = cfg.measure_list()?;
    let sampler = cfg.sampler(seed)?;
    let rows: Vec<ResultRow> =
        pool(jobs)?.install(|| cfg.values.par_iter().map(|&v| compute_row(cfg, &measures, &sampler, v)).collect());
    let mut out = SweepOutcome { measures, rows };
    if cfg.normalize {
        normalize(&mut out);
    }
    Ok(out)
}

/// Divides each measure column by its largest value.
pub fn normalize(out: &mut SweepOutcome) {
    for k in 0..out.measures.len() {
        let max = out.rows.iter().filter_map(|r| r.cells[k].as_ref()).map(|c| c.value).fold(0.0, f64::max);
        for row in &mut out.rows {
            if let Some(c) = row.cells[k].as_mut() {
                c.normalized = Some(if max > 0.0 { c.value / max } else { 0.0 });
            }
        }
    }
}

pub const DEFAULT_CROSSOVER_THRESHOLD: f64 = 1e-6;
pub const CROSSOVER_TOL: f64 = 1e-3;

/// Parameter value where `measure` first crosses `threshold` along the sweep,
/// bisected to `CROSSOVER_TOL`.
///
/// The sweep values are scanned for the first adjacent pair on opposite sides
/// of the threshold; either crossing direction is accepted.
pub fn detect_crossover(
    cfg: &SweepConfig,
    measure: Measure,
    threshold: f64,
    seed: Option<u64>,
    jobs: Option<usize>,
) -> Result<f64, CliError> {
    cfg.validate()?;
    let seed = seed.or(cfg.sampler.seed);
    // the config's own measure list may need a seed even when this one does not
    let sampler = if measure.is_sampled() {
        cfg.sampler(seed)?
    } else {
        StateSampler::new(cfg.strategy()?, cfg.sampler.budget, seed.unwrap_or(0))
    };
    let window = cfg.time_window()?;
    let value_at = |p: f64| -> Result<f64, CliError> {
        let model = cfg.model_at(p)?;
        let s = StateSampler { seed: row_seed(sampler.seed, p), ..sampler };
        Ok(measure.compute(&model, &window, &s)?.value)
    };
    let above = |p: f64| value_at(p).map(|v| v > threshold);
    let flags: Vec<bool> = pool(jobs)?.install(|| cfg.values.par_iter().map(|&p| above(p)).collect::<Result<_, _>>())?;
    let k = (1..flags.len())
        .find(|&k| flags[k] != flags[k - 1])
        .ok_or(CliError::NoCrossing { measure: measure.id().into(), threshold })?;
    let (mut lo, mut hi) = (cfg.values[k - 1], cfg.values[k]);
    let lo_flag = flags[k - 1];
    while hi - lo > CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        if above(mid)? == lo_flag {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
