use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use satsem_cli::{run, CliError, Command, ExperimentConfig};

#[derive(Parser)]
#[command(name = "satsem", version, about = "Satellite semantic transmission experiments")]
struct Args {
    /// Experiment config (TOML). Built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Two-leg link budget per weather class.
    Linkbudget,
    /// SNR sweep over the configured plans.
    Simulate,
    /// KB update counts per level over synthetic corpora.
    KbSweep,
    /// Agent-driven session over the case-study pass.
    AgentCase,
}

fn load(args: &Args) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(o) = &args.out {
        cfg.output_dir = o.clone();
    }
    if args.workers.is_some() {
        cfg.workers = args.workers;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let command = match args.command {
        Cmd::Linkbudget => Command::LinkBudget,
        Cmd::Simulate => Command::Simulate,
        Cmd::KbSweep => Command::KbSweep,
        Cmd::AgentCase => Command::AgentCase,
    };
    match load(&args).and_then(|cfg| run(command, &cfg)) {
        Ok(table) => {
            print!("{table}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
