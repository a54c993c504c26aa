//! Command-line experiment harness: run a configuration, render reports
//! over previous runs, or dump a transition oracle.

use alcs::engine::Algorithm;
use alcs::env::{frozen_lake_4x4, maze6, Environment};
use alcs::harness::{
    collect_runs, render_charts, render_report, run_experiment, write_run_artifacts, EnvKind,
    ExperimentConfig,
};
use alcs::hindsight::GoalStrategy;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "alcs-her",
    about = "Anticipatory classifier systems with experience replay and hindsight goal relabeling",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment configuration and write metrics.csv + summary.json.
    Run(RunArgs),
    /// Render comparative tables and SVG charts over all runs in a directory.
    Report {
        /// Directory holding one subdirectory per completed run.
        dir: PathBuf,
    },
    /// Dump the deterministic transition oracle as tab-separated lines.
    Oracle {
        /// Environment: maze6 | frozenlake.
        #[arg(long)]
        env: EnvKind,
        /// Slippery lake dynamics (stochastic environments have no oracle).
        #[arg(long, default_value_t = false)]
        slippery: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Engine: acs2 | acs2er | acs2her.
    #[arg(long)]
    algo: Algorithm,
    /// Environment: maze6 | frozenlake.
    #[arg(long)]
    env: EnvKind,
    /// Replay mini-batch size (replay engines only).
    #[arg(long)]
    m: Option<usize>,
    /// Hindsight factor: virtual goals per real transition (acs2her only).
    #[arg(long)]
    k: Option<usize>,
    /// Virtual-goal strategy: final | future (default depends on k).
    #[arg(long)]
    strategy: Option<GoalStrategy>,
    /// Independent repeats.
    #[arg(long, default_value_t = 30)]
    repeats: usize,
    /// Exploration trials per repeat.
    #[arg(long, default_value_t = 2000)]
    explore: usize,
    /// Exploitation trials per repeat.
    #[arg(long, default_value_t = 500)]
    exploit: usize,
    /// Base seed; repeat i derives seed + i.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output directory; artifacts go to <out>/<label>/.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Population/knowledge sampling cadence in trials.
    #[arg(long, default_value_t = 25)]
    metrics_every: usize,
    /// Exploration probability during explore trials.
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Learning rate.
    #[arg(long, default_value_t = 0.05)]
    beta: f64,
    /// Discount factor.
    #[arg(long, default_value_t = 0.95)]
    gamma: f64,
    /// Per-trial step cap (default: 50 maze, 100 lake).
    #[arg(long)]
    max_steps: Option<usize>,
    /// Slippery lake dynamics.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    slippery: bool,
    /// Enable genetic generalization.
    #[arg(long, default_value_t = false)]
    ga: bool,
    /// Replay memory capacity N.
    #[arg(long, default_value_t = 10_000)]
    memory: usize,
    /// Replay warm-up fill.
    #[arg(long, default_value_t = 1000)]
    warmup: usize,
    /// Also learn from successful hindsight trials.
    #[arg(long, default_value_t = false)]
    learn_on_success: bool,
    /// Average per-repeat threshold crossings instead of crossing the mean
    /// knowledge curve.
    #[arg(long, default_value_t = false)]
    threshold_per_repeat: bool,
}

fn build_config(args: &RunArgs) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(args.algo, args.env);
    cfg.slippery = args.slippery;
    cfg.repeats = args.repeats;
    cfg.explore_trials = args.explore;
    cfg.exploit_trials = args.exploit;
    cfg.batch_size = args.m;
    cfg.hindsight_count = args.k;
    cfg.strategy = args.strategy;
    cfg.max_steps = args.max_steps;
    cfg.metrics_every = args.metrics_every;
    cfg.seed = args.seed;
    cfg.params.epsilon = args.epsilon;
    cfg.params.beta = args.beta;
    cfg.params.gamma = args.gamma;
    cfg.params.do_ga = args.ga;
    cfg.params.memory_capacity = args.memory;
    cfg.params.warmup = args.warmup;
    cfg.params.learn_on_success = args.learn_on_success;
    cfg.threshold_per_repeat = args.threshold_per_repeat;
    cfg
}

fn run(args: &RunArgs) -> Result<()> {
    let cfg = build_config(args);
    let outcome = run_experiment(&cfg)?;
    let dir = write_run_artifacts(&outcome, &args.out)?;
    println!("wrote {}", dir.display());
    println!();
    println!("{}", render_report(std::slice::from_ref(&outcome.summary)));
    Ok(())
}

fn report(dir: &PathBuf) -> Result<()> {
    let runs = collect_runs(dir)?;
    if runs.is_empty() {
        bail!("no runs found under {} (expected <dir>/<label>/summary.json)", dir.display());
    }
    let summaries: Vec<_> = runs.iter().map(|r| r.summary.clone()).collect();
    let text = render_report(&summaries);
    let report_path = dir.join("report.txt");
    std::fs::write(&report_path, &text)
        .with_context(|| format!("writing {}", report_path.display()))?;
    let charts = render_charts(&runs, &dir.join("charts"))?;
    println!("{text}");
    println!("wrote {}", report_path.display());
    for chart in charts {
        println!("wrote {}", chart.display());
    }
    Ok(())
}

fn oracle(env: EnvKind, slippery: bool) -> Result<()> {
    let env: Box<dyn Environment> = match env {
        EnvKind::Maze6 => Box::new(maze6()),
        EnvKind::FrozenLake => Box::new(frozen_lake_4x4(slippery)),
    };
    let transitions = env
        .enumerate_transitions()
        .context("this environment configuration has no deterministic oracle")?;
    println!("state_id\tstate\taction\tnext_state_id\tnext_state");
    for tr in transitions {
        println!(
            "{}\t{}\t{}\t{}\t{}",
            tr.state_id, tr.state, tr.action, tr.next_state_id, tr.next_state
        );
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args),
        Command::Report { dir } => report(dir),
        Command::Oracle { env, slippery } => oracle(*env, *slippery),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
