//! CSV and JSON tables, the metadata sidecar and the console summary.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Format;
use crate::sweep::{ResultRow, SweepOutcome};
use crate::CliError;

/// JSON form of a finished sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonTable {
    pub sweep_parameter: String,
    pub measures: Vec<String>,
    pub rows: Vec<ResultRow>,
}

/// `param, <m>_value, <m>_diverged, <m>_intervals, <m>_argmax[, <m>_normalized], ..., error`.
pub fn csv_header(out: &SweepOutcome, normalized: bool) -> Vec<String> {
    let mut h = vec!["param".to_string()];
    for m in &out.measures {
        for suffix in ["value", "diverged", "intervals", "argmax"] {
            h.push(format!("{m}_{suffix}"));
        }
        if normalized {
            h.push(format!("{m}_normalized"));
        }
    }
    h.push("error".into());
    h
}

pub fn write_csv(out: &SweepOutcome, normalized: bool, w: impl Write) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(csv_header(out, normalized))?;
    for row in &out.rows {
        // f64 Display is the shortest string that round-trips
        let mut rec = vec![row.param.to_string()];
        for cell in &row.cells {
            match cell {
                Some(c) => {
                    rec.extend([c.value.to_string(), c.diverged.to_string(), c.intervals.to_string(), c.argmax.clone()]);
                    if normalized {
                        rec.push(c.normalized.map(|v| v.to_string()).unwrap_or_default());
                    }
                }
                None => rec.extend(std::iter::repeat(String::new()).take(if normalized { 5 } else { 4 })),
            }
        }
        rec.push(row.error.clone().unwrap_or_default());
        wtr.write_record(rec)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_json(out: &SweepOutcome, parameter: &str, w: impl Write) -> Result<(), CliError> {
    let table = JsonTable {
        sweep_parameter: parameter.into(),
        measures: out.measures.iter().map(|m| m.id().to_string()).collect(),
        rows: out.rows.clone(),
    };
    serde_json::to_writer_pretty(w, &table).map_err(|e| CliError::Io(e.into()))
}

pub fn write_table(out: &SweepOutcome, parameter: &str, format: Format, normalized: bool, w: impl Write) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(out, normalized, w),
        Format::Json => write_json(out, parameter, w),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub config_sha256: String,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    pub seed: Option<u64>,
    pub rows: usize,
    pub failed_rows: usize,
}

impl Meta {
    pub fn new(config_text: &str, wall_time_seconds: f64, seed: Option<u64>, out: &SweepOutcome) -> Self {
        Self {
            config_sha256: format!("{:x}", Sha256::digest(config_text.as_bytes())),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            wall_time_seconds,
            seed,
            rows: out.rows.len(),
            failed_rows: out.failures(),
        }
    }
}

/// `results/fig.csv` → `results/fig.meta.json`.
pub fn meta_path(table: &Path) -> PathBuf {
    let stem = table.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "sweep".into());
    table.with_file_name(format!("{stem}.meta.json"))
}

pub fn write_meta(meta: &Meta, path: &Path) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(meta).map_err(|e| CliError::Io(e.into()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Fixed-width table of values; diverged entries carry a `*`.
pub fn summary(out: &SweepOutcome, parameter: &str) -> String {
    let mut s = format!("{parameter:>10}");
    for m in &out.measures {
        s += &format!(" {:>14}", m.id());
    }
    s.push('\n');
    for row in &out.rows {
        s += &format!("{:>10.4}", row.param);
        for cell in &row.cells {
            s += &match cell {
                Some(c) => format!(" {:>13.6e}{}", c.value, if c.diverged { '*' } else { ' ' }),
                None => format!(" {:>14}", "error"),
            };
        }
        s.push('\n');
    }
    if out.rows.iter().any(|r| r.cells.iter().flatten().any(|c| c.diverged)) {
        s += "* diverged: value is the partial sum before the pole\n";
    }
    for row in out.rows.iter().filter(|r| r.error.is_some()) {
        s += &format!("{parameter} = {}: {}\n", row.param, row.error.as_deref().unwrap_or(""));
    }
    s
}
