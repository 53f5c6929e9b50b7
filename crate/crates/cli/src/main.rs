//! Command-line front end: run benchmark scenarios, validate scenario
//! files, and emit reports.
//!
//! Exit codes: 0 success, 1 validation error, 2 unreachable pose,
//! 3 I/O error.

use armtraj::pipeline::{
    refine_with_ps, run_all, run_analytic, run_ga_arm, PipelineError, RunResult,
};
use armtraj::report::{emit_report, ReportError};
use armtraj::scenario::{bundled, load_scenario, Scenario, ScenarioConfig, ScenarioError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "armtraj",
    version,
    about = "Point-to-point trajectory tracking benchmarks for a three-link planar arm"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run experiment arms on a scenario file and write reports.
    Run {
        /// Scenario file (TOML).
        scenario: PathBuf,
        #[command(flatten)]
        options: RunOptions,
    },
    /// Parse a scenario file and check every invariant.
    Validate {
        /// Scenario file (TOML).
        scenario: PathBuf,
    },
    /// Run a bundled benchmark task.
    Demo {
        /// Which bundled task to run.
        #[arg(value_enum)]
        task: DemoTask,
        #[command(flatten)]
        options: RunOptions,
    },
}

#[derive(Args)]
struct RunOptions {
    /// Which arm(s) to run.
    #[arg(long, value_enum, default_value_t = ArmChoice::All)]
    arm: ArmChoice,
    /// Override the scenario's RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for the report files.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    plots: bool,
    /// Evaluate objectives on a single thread.
    #[arg(long)]
    serial: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ArmChoice {
    Analytic,
    Ga,
    Gps,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoTask {
    Line,
    Circle,
}

enum CliError {
    Scenario(ScenarioError),
    Pipeline(PipelineError),
    Report(ReportError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Scenario(ScenarioError::Io { .. }) | CliError::Report(_) => 3,
            CliError::Scenario(_) => 1,
            CliError::Pipeline(PipelineError::Unreachable { .. }) => 2,
            CliError::Pipeline(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Scenario(e) => e.to_string(),
            CliError::Pipeline(e) => e.to_string(),
            CliError::Report(e) => e.to_string(),
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        CliError::Scenario(e)
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Pipeline(e)
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        CliError::Report(e)
    }
}

fn describe(config: &ScenarioConfig) {
    let kind = match config.trajectory.kind {
        armtraj::scenario::TrajectoryKind::Line => "line",
        armtraj::scenario::TrajectoryKind::Circle => "circle",
    };
    println!(
        "ok: {kind} trajectory, {} via points, weights ({}, {}, {}, {}), seed {}",
        config.n,
        config.weights.c1,
        config.weights.c2,
        config.weights.c3,
        config.weights.c4,
        config.seed
    );
    println!(
        "    phi {} -> {} deg over {} s, ga {} x {} generations",
        config.phi.start_deg,
        config.phi.end_deg,
        config.phi.duration_s,
        config.ga.population_size,
        config.ga.generations
    );
}

fn run_arms(scenario: &Scenario, choice: ArmChoice, seed: u64) -> Result<Vec<RunResult>, CliError> {
    let results = match choice {
        ArmChoice::Analytic => vec![run_analytic(scenario)?],
        ArmChoice::Ga => vec![run_ga_arm(scenario, seed)?],
        ArmChoice::Gps => {
            let ga = run_ga_arm(scenario, seed)?;
            vec![refine_with_ps(scenario, &ga)?]
        }
        ArmChoice::All => run_all(scenario, seed)?,
    };
    Ok(results)
}

fn execute(config: ScenarioConfig, options: &RunOptions) -> Result<(), CliError> {
    let mut scenario = config.build()?;
    if options.serial {
        scenario.ga.parallel = false;
        scenario.ps.parallel = false;
    }
    let seed = options.seed.unwrap_or(scenario.seed);
    let results = run_arms(&scenario, options.arm, seed)?;

    println!(
        "{:<10} {:>14} {:>14} {:>12}",
        "arm", "f_eval (m)", "f_fit", "wall"
    );
    for r in &results {
        println!(
            "{:<10} {:>14.6e} {:>14.6e} {:>12}",
            r.arm.label(),
            r.breakdown.f_eval,
            r.breakdown.f_fit,
            format!("{:.1?}", r.duration)
        );
    }

    let files = emit_report(&results, &scenario, &options.out, options.plots)?;
    println!(
        "\nreport written to {}: angles.csv, errors.csv, trace.csv, summary.toml{}",
        options.out.display(),
        if files.plots.is_empty() {
            String::new()
        } else {
            format!(", {} plots", files.plots.len())
        }
    );
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { scenario, options } => {
            let config = load_scenario(&scenario)?;
            execute(config, &options)
        }
        Command::Validate { scenario } => {
            let config = load_scenario(&scenario)?;
            describe(&config);
            Ok(())
        }
        Command::Demo { task, options } => {
            let config = match task {
                DemoTask::Line => bundled::line(),
                DemoTask::Circle => bundled::circle(),
            };
            execute(config, &options)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
