use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dbac_lab::config::ExperimentConfig;
use dbac_lab::error::LabError;

#[derive(Debug, Parser)]
#[command(
    name = "dbac-lab",
    version,
    about = "Run double-bracket cooling experiments from a TOML config"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the experiment described by the config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse and check the config without running anything.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_ACCEPTANCE: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn exit_code(e: &LabError) -> u8 {
    match e {
        LabError::Config(_) | LabError::DirtyOutput(_) => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Validate { config } => match ExperimentConfig::load(&config) {
            Ok(cfg) => {
                println!(
                    "{}: valid {} config",
                    config.display(),
                    cfg.experiment.name()
                );
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Run { config, out, seed } => {
            let mut cfg = match ExperimentConfig::load(&config) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            match dbac_lab::run(&cfg) {
                Ok(manifest) => {
                    println!(
                        "wrote {} files to {}",
                        manifest.files.len(),
                        cfg.output_dir.display()
                    );
                    match manifest.acceptance {
                        Some(a) if !a.passed => {
                            eprintln!("acceptance: criteria {:?} failed", a.failed);
                            ExitCode::from(EXIT_ACCEPTANCE)
                        }
                        _ => ExitCode::SUCCESS,
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            }
        }
    }
}
