//! Sweeps and figure presets over the core analysis, written as CSV tables
//! with JSON sidecars.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod sweep;

use clap::Parser;
use config::RunConfig;
use error::CliError;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "rffso", version, about = "RF/FSO relaying performance sweeps")]
pub struct Args {
    /// TOML configuration, or a JSON sidecar from an earlier run.
    #[arg(long, conflicts_with = "figure", required_unless_present = "figure")]
    pub config: Option<PathBuf>,
    /// Figure preset (fig3 .. fig10).
    #[arg(long)]
    pub figure: Option<String>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<u64>,
    /// Worker threads for the Monte Carlo engine.
    #[arg(long)]
    pub threads: Option<usize>,
}

fn write_sweep(dir: &Path, name: &str, cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let table = sweep::run(cfg)?;
    let csv_path = dir.join(format!("{name}.csv"));
    std::fs::write(&csv_path, output::csv(&table)).map_err(|e| CliError::Io(format!("{}: {e}", csv_path.display())))?;
    let json_path = dir.join(format!("{name}.json"));
    std::fs::write(&json_path, output::sidecar(cfg)).map_err(|e| CliError::Io(format!("{}: {e}", json_path.display())))?;
    Ok(csv_path)
}

/// Runs every sweep named by `args`; returns the CSV paths written.
pub fn run(args: &Args) -> Result<Vec<PathBuf>, CliError> {
    let jobs: Vec<(String, RunConfig)> = match (&args.config, &args.figure) {
        (Some(path), _) => {
            let stem = path.file_stem().map_or("sweep".into(), |s| s.to_string_lossy().into_owned());
            vec![(stem, config::load(path)?)]
        }
        (None, Some(fig)) => presets::figure(fig)?
            .into_iter()
            .map(|(label, c)| (format!("{fig}_{label}"), c))
            .collect(),
        (None, None) => return Err(CliError::validation("config", "pass --config or --figure")),
    };
    let jobs: Vec<(String, RunConfig)> = jobs
        .into_iter()
        .map(|(name, mut c)| {
            if let Some(s) = args.seed {
                c.mc.seed = s;
            }
            if let Some(n) = args.samples {
                c.mc.samples = n;
            }
            (name, c)
        })
        .collect();
    for (_, c) in &jobs {
        c.validate()?;
    }
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::Io(format!("{}: {e}", args.out.display())))?;
    jobs.iter().map(|(name, c)| write_sweep(&args.out, name, c)).collect()
}
