//! Thin command-line front end over [`qpurify::runner`].

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qpurify::runner::{self, CliOverrides};

#[derive(Parser)]
#[command(name = "qpurify", version, about = "feedback-controlled dissipative purification simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an experiment config and write CSV data plus a manifest.
    Run {
        /// Path to the TOML experiment configuration.
        config: PathBuf,
        /// Directory for output files (overrides the config).
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Random seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for sweeps and trajectory ensembles; 0 = all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Output format; only "csv" is implemented.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Parse and validate a config without running it.
    Validate {
        config: PathBuf,
    },
    /// List the available experiment kinds.
    ListExperiments,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, output_dir, seed, threads, format } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", config.display());
                    return ExitCode::from(3);
                }
            };
            let cfg = match runner::parse_config(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            let overrides =
                CliOverrides { output_dir, seed, threads, format: Some(format) };
            match runner::run_experiment(&cfg, &overrides) {
                Ok(summary) => {
                    for out in &summary.outputs {
                        println!("wrote {}", out.display());
                    }
                    if summary.grid_points > 0 {
                        println!(
                            "grid points: {} ({} failed)",
                            summary.grid_points, summary.failed_points
                        );
                        if summary.failed_points > 0 {
                            return ExitCode::from(2);
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::Validate { config } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", config.display());
                    return ExitCode::from(3);
                }
            };
            match runner::parse_config(&text) {
                Ok(cfg) => {
                    println!(
                        "ok: {} / {}",
                        cfg.experiment.name(),
                        cfg.run.name()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::ListExperiments => {
            print!("{}", runner::list_experiments());
            ExitCode::SUCCESS
        }
    }
}
