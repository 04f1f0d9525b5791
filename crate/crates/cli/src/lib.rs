//! Experiment harness: configuration, the four subcommands and their result
//! files. The `satsem` binary is a thin wrapper over [`run`].

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::{
    agent_case::{cmd_agent_case, AgentCaseOutput},
    kb_sweep::{cmd_kb_sweep, KbSweepOutput},
    linkbudget::{cmd_linkbudget, LinkBudgetRow},
    simulate::{cmd_simulate, SimulateOutput},
};
pub use config::ExperimentConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Pipeline(#[from] satsem_core::pipeline::PipelineError),
    #[error(transparent)]
    Scenario(#[from] satsem_core::scenario::ScenarioError),
    #[error(transparent)]
    Link(#[from] satsem_core::linkbudget::LinkError),
    #[error(transparent)]
    Agent(#[from] satsem_core::agent::AgentError),
    #[error(transparent)]
    Kb(#[from] satsem_core::kbstore::KbError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("writing results: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit code: 2 for configuration problems, 3 for everything
    /// that goes wrong while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    LinkBudget,
    Simulate,
    KbSweep,
    AgentCase,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::LinkBudget => "linkbudget",
            Command::Simulate => "simulate",
            Command::KbSweep => "kb-sweep",
            Command::AgentCase => "agent-case",
        }
    }
}

/// Runs one subcommand and writes its result files under `cfg.output_dir`.
/// Returns the human-readable summary table.
pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<String, CliError> {
    cfg.validate()?;
    match command {
        Command::LinkBudget => {
            let rows = cmd_linkbudget(cfg)?;
            output::write_results(cfg, command, &rows, &rows)?;
            Ok(output::table(&rows)?)
        }
        Command::Simulate => {
            let out = cmd_simulate(cfg)?;
            output::write_results(cfg, command, &out.records, &out.summary)?;
            Ok(output::table(&out.summary)?)
        }
        Command::KbSweep => {
            let out = cmd_kb_sweep(cfg)?;
            output::write_results(cfg, command, &out.records, &out.summary)?;
            let mut text = output::table(&out.summary)?;
            text.push_str(&format!("monotonicity violations: {}\n", out.violations));
            Ok(text)
        }
        Command::AgentCase => {
            let out = cmd_agent_case(cfg)?;
            output::write_results(cfg, command, &out.trace, &out.summary)?;
            let mut text = output::table(&out.summary)?;
            if let Some(r) = out.kb_ratio {
                text.push_str(&format!("kb update bandwidth vs forced L3: {r:.3}\n"));
            }
            Ok(text)
        }
    }
}
