//! Configuration, scenarios, output files, and the run driver behind the CLI.

pub mod check;
pub mod config;
pub mod output;
pub mod scenario;

use crate::error::Result;
use crate::integrator::{run, RunOutput};

pub use config::{parse_config, RunConfig};
pub use output::{write_outputs, RunSummary};
pub use scenario::{make_scenario, Scenario, ScenarioKind, ScenarioParams};

/// Builds the scenario and grid described by `config` and runs it.
pub fn run_config(config: &RunConfig) -> Result<(RunOutput, RunSummary)> {
    let scenario = make_scenario(config.scenario, config.scenario_params())?;
    let grid = scenario.grid(config.n_cells(), config.degree())?;
    let initial = scenario.initial_distribution(grid.clone())?;
    let step = config.step_config(scenario.self_consistent);
    let out = run(
        initial,
        &step,
        config.t_end,
        config.diag_interval(),
        &config.snapshot_times,
    )?;
    let summary = RunSummary {
        entries: vec![
            ("n_cells".into(), config.n_cells().to_string()),
            ("actual_dof_per_dim".into(), config.actual_dof().to_string()),
            ("domain_length".into(), scenario.domain_length.to_string()),
            ("dx".into(), grid.x().cell_width().to_string()),
            ("dv".into(), grid.v().cell_width().to_string()),
            ("steps".into(), out.steps.to_string()),
            (
                "limiter_scaled_cells".into(),
                out.limiter_stats.scaled.to_string(),
            ),
            (
                "limiter_clamped_cells".into(),
                out.limiter_stats.clamped.to_string(),
            ),
            (
                "limiter_presmoothed_cells".into(),
                out.limiter_stats.presmoothed.to_string(),
            ),
            ("description".into(), scenario.description.clone()),
        ],
    };
    Ok((out, summary))
}
