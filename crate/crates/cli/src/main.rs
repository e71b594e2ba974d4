use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mlo_cli::experiment::MSE_CURVE_FILE;
use mlo_cli::{emit_mse_curve, load_bundle, run_experiment, summarize, ExperimentConfig};

#[derive(Parser)]
#[command(name = "mlo", version, about = "Subsampled Metropolis-Hastings experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every replication of an experiment config and write the result bundle.
    Run { config: PathBuf },
    /// Print per-cell posterior and replication summaries of a bundle as CSV.
    Summarize { bundle_dir: PathBuf },
    /// Write `mse_curve.csv` (arm, r, mse_sum) into a bundle directory.
    MseCurve { bundle_dir: PathBuf },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(&config).with_context(|| format!("loading {}", config.display()))?;
            let bundle = run_experiment(&cfg)?;
            let failures: usize = bundle.cells.iter().map(|c| c.failures).sum();
            eprintln!(
                "wrote {} ({} cells x {} replications, {failures} failed runs)",
                cfg.output_dir.display(),
                bundle.cells.len(),
                cfg.replications
            );
            for c in bundle.cells.iter().filter(|c| !c.errors.is_empty()) {
                eprintln!("  {}: {}", c.label, c.errors.join("; "));
            }
        }
        Command::Summarize { bundle_dir } => {
            let bundle = load_bundle(&bundle_dir)?;
            print!("{}", summarize(&bundle)?);
        }
        Command::MseCurve { bundle_dir } => {
            let bundle = load_bundle(&bundle_dir)?;
            let path = bundle_dir.join(MSE_CURVE_FILE);
            emit_mse_curve(&bundle, &path)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
