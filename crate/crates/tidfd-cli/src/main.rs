//! `tidfd` command-line interface.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical-invariant
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tidfd_cli::config::ExperimentConfig;
use tidfd_cli::error::CliResult;
use tidfd_cli::experiment;

#[derive(Parser)]
#[command(
    name = "tidfd",
    about = "Filtered translation-invariant frame decompositions for stable differentiation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON experiment configuration (keys = config fields).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Overrides the config output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Phantom -> integration -> noise -> filtered reconstruction.
    Reconstruct,
    /// Convergence-rate study with the a-priori parameter rule.
    RateStudy,
    /// Thresholded undecimated vs decimated comparison.
    Compare,
    /// Frame bounds, canonical dual and reproducing-formula check.
    ValidateFrame,
    /// Regularizing-filter axioms and qualification table.
    ValidateFilter,
    /// Lower-bound source family and its rate exponent.
    ProbeOptimality,
}

fn load_config(cli: &Cli) -> CliResult<ExperimentConfig> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => match cli.command {
            Command::RateStudy => ExperimentConfig::rate_study_defaults(),
            _ => ExperimentConfig::default(),
        },
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> CliResult<()> {
    let config = load_config(cli)?;
    match cli.command {
        Command::Reconstruct => {
            let report = experiment::run_reconstruction(&config)?;
            println!(
                "reconstruct: phantom {} filter {} relative error {:.6e}",
                report.phantom, report.filter, report.relative_error
            );
        }
        Command::RateStudy => {
            let result = experiment::run_rate_study(&config)?;
            println!(
                "rate-study: filter {} mu {} slope {:.4} (target {:.4})",
                result.filter, result.mu, result.fitted_slope, result.target_slope
            );
        }
        Command::Compare => {
            let summary = experiment::run_comparison(&config)?;
            println!(
                "compare: median error ti {:.6e} decimated {:.6e}; \
                 shift variance ti {:.3e} decimated {:.3e}",
                summary.median_ti_error,
                summary.median_decimated_error,
                summary.ti_shift_variance,
                summary.decimated_shift_variance
            );
        }
        Command::ValidateFrame => {
            let report = experiment::run_validate_frame(&config)?;
            println!(
                "validate-frame: {} bounds ({:.12}, {:.12}) dual residual {:.3e}",
                report.bank, report.bounds_a, report.bounds_b, report.dual_residual
            );
        }
        Command::ValidateFilter => {
            let report = experiment::run_validate_filter(&config)?;
            println!(
                "validate-filter: {} C = {:.6} f3 deviation {:.3e}",
                report.name, report.c, report.f3_max_deviation
            );
        }
        Command::ProbeOptimality => {
            let report = experiment::run_probe_optimality(&config)?;
            println!(
                "probe-optimality: mu {} slope {:.8} (target {:.8})",
                report.mu, report.fitted_slope, report.target_slope
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
