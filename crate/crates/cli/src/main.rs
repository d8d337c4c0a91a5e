use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use nmq_cli::config::{Format, SweepConfig};
use nmq_cli::figures::{figure, PRESET_SEED};
use nmq_cli::output::{meta_path, summary, write_meta, write_table, Meta};
use nmq_cli::sweep::{detect_crossover, run_sweep, DEFAULT_CROSSOVER_THRESHOLD};
use nmq_cli::{sweep_exit_code, CliError};
use nmq_core::measures::Measure;

#[derive(Parser)]
#[command(name = "nmq", version, about = "Non-Markovianity measures for exactly solvable qubit channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate measures over a parameter sweep.
    Sweep {
        /// TOML or JSON sweep description.
        #[arg(long, required_unless_present = "figure")]
        config: Option<PathBuf>,
        /// Use a built-in figure preset (1, 2 or 3) instead of a config file.
        #[arg(long, conflicts_with = "config")]
        figure: Option<u8>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Output path; without it the table goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Locate where a measure first crosses a threshold along the sweep.
    Crossover {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = DEFAULT_CROSSOVER_THRESHOLD)]
        threshold: f64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep { config, figure: Some(k), jobs, out, format, seed } => {
            debug_assert!(config.is_none());
            run_figure(k, jobs, out, format, seed)
        }
        Command::Sweep { config: Some(path), jobs, out, format, seed, .. } => run_config(&path, jobs, out, format, seed),
        Command::Sweep { .. } => Err(CliError::Config("either --config or --figure is required".into())),
        Command::Crossover { config, measure, threshold, jobs, seed } => crossover(&config, &measure, threshold, jobs, seed),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run_config(path: &Path, jobs: Option<usize>, out: Option<PathBuf>, format: Option<Format>, seed: Option<u64>) -> Result<i32, CliError> {
    let (cfg, text) = SweepConfig::load(path)?;
    let seed = cfg.resolve_seed(seed)?;
    let out = out.or_else(|| cfg.output.path.clone());
    let format = format.unwrap_or(cfg.output.format);
    execute(&cfg, &text, jobs, out.as_deref(), format, seed)
}

fn run_figure(k: u8, jobs: Option<usize>, out: Option<PathBuf>, format: Option<Format>, seed: Option<u64>) -> Result<i32, CliError> {
    let format = format.unwrap_or(Format::Csv);
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut code = 0;
    for (suffix, cfg) in figure(k)? {
        let text = serde_json::to_string(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
        // --out gives the stem; each panel appends its suffix
        let path = match &out {
            Some(p) => {
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                p.with_file_name(format!("{stem}{suffix}.{ext}"))
            }
            None => PathBuf::from(format!("figure{k}{suffix}.{ext}")),
        };
        code = code.max(execute(&cfg, &text, jobs, Some(&path), format, Some(seed.unwrap_or(PRESET_SEED)))?);
    }
    Ok(code)
}

fn execute(cfg: &SweepConfig, text: &str, jobs: Option<usize>, out: Option<&Path>, format: Format, seed: Option<u64>) -> Result<i32, CliError> {
    let start = Instant::now();
    let outcome = run_sweep(cfg, seed, jobs)?;
    let wall = start.elapsed().as_secs_f64();
    let parameter = cfg.sweep_parameter.name();
    let table = summary(&outcome, parameter);
    match out {
        Some(path) => {
            write_table(&outcome, parameter, format, cfg.normalize, BufWriter::new(File::create(path)?))?;
            write_meta(&Meta::new(text, wall, seed, &outcome), &meta_path(path))?;
            print!("{table}");
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_table(&outcome, parameter, format, cfg.normalize, &mut lock)?;
            lock.flush()?;
            eprint!("{table}");
        }
    }
    Ok(sweep_exit_code(outcome.failures()))
}

fn crossover(path: &Path, measure: &str, threshold: f64, jobs: Option<usize>, seed: Option<u64>) -> Result<i32, CliError> {
    let (cfg, _) = SweepConfig::load(path)?;
    let measure: Measure = measure.parse().map_err(|e| CliError::Config(format!("{e}")))?;
    let seed = cfg.resolve_seed(seed)?;
    let p = detect_crossover(&cfg, measure, threshold, seed, jobs)?;
    println!("{p}");
    Ok(0)
}
