//! Config-driven experiment runner for double-bracket algorithmic cooling.

pub mod acceptance;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

use config::{Experiment, ExperimentConfig};
use error::{LabError, Result};
use output::{AcceptanceSummary, ResultsManifest, Sink};

fn execute(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<Option<AcceptanceSummary>> {
    match cfg.experiment {
        Experiment::SweepTheta => experiments::sweep_theta(cfg, sink)?,
        Experiment::SweepS => experiments::sweep_s(cfg, sink)?,
        Experiment::GridKm => experiments::grid_km(cfg, sink)?,
        Experiment::Trotter => experiments::trotter(cfg, sink)?,
        Experiment::Ptm => experiments::ptm(cfg, sink)?,
        Experiment::Baselines => experiments::baselines(cfg, sink)?,
        Experiment::Trajectory => experiments::trajectory(cfg, sink)?,
        Experiment::Acceptance => {
            sink.stage("acceptance");
            let scratch = tempfile::tempdir().map_err(|e| LabError::io(std::env::temp_dir(), e))?;
            let runner = acceptance::in_process_runner(scratch.path());
            let outcomes = acceptance::run_suite(cfg.seed, &runner);
            sink.emit_json("acceptance.json", &outcomes)?;
            return Ok(Some(acceptance::summarize(&outcomes)));
        }
    }
    Ok(None)
}

/// Runs the configured experiment into `cfg.output_dir` and writes the manifest.
///
/// When a stage fails the manifest is still written, naming that stage.
pub fn run(cfg: &ExperimentConfig) -> Result<ResultsManifest> {
    cfg.validate()?;
    let mut sink = Sink::open(&cfg.output_dir)?;
    match execute(cfg, &mut sink) {
        Ok(summary) => sink.finish(cfg, false, summary),
        Err(e) => {
            sink.finish(cfg, true, None)?;
            Err(e)
        }
    }
}
