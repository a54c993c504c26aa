//! Repeated-run protocol: independent seeded runs of explore + exploit
//! trials, metric capture, and aggregation into a summary.

use super::config::{ConfigError, EnvKind, ExperimentConfig};
use super::metrics::{knowledge, trial_of_threshold, MetricsRecord, Phase};
use crate::engine::{
    run_acs2_trial, run_acs2er_trial, run_acs2her_trial, Algorithm, EngineParams,
};
use crate::env::{frozen_lake_4x4, maze6, Environment, OracleTransition};
use crate::hindsight::GoalStrategy;
use crate::population::Population;
use crate::replay::ReplayMemory;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::error::Error;
use std::fmt;
use std::io;
use std::path::PathBuf;

/// Environment variable capping the number of concurrently running repeats.
pub const THREADS_ENV_VAR: &str = "ALCS_THREADS";

/// Errors surfaced by the harness.
#[derive(Debug)]
pub enum ExperimentError {
    Config(ConfigError),
    Io { path: PathBuf, source: io::Error },
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::Config(e) => write!(f, "{e}"),
            ExperimentError::Io { path, source } => {
                write!(f, "i/o error on {}: {source}", path.display())
            }
        }
    }
}

impl Error for ExperimentError {
    fn source(&self) -> Option<&(dyn Error + 'static)> {
        match self {
            ExperimentError::Config(e) => Some(e),
            ExperimentError::Io { source, .. } => Some(source),
        }
    }
}

impl From<ConfigError> for ExperimentError {
    fn from(e: ConfigError) -> Self {
        ExperimentError::Config(e)
    }
}

/// Aggregate summary of one configuration across all repeats.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub label: String,
    pub algo: Algorithm,
    pub env: EnvKind,
    pub batch_size: Option<usize>,
    pub hindsight_count: Option<usize>,
    pub strategy: Option<GoalStrategy>,
    pub repeats: usize,
    pub explore_trials: usize,
    pub exploit_trials: usize,
    /// Knowledge is measured only on deterministic dynamics.
    pub knowledge_measured: bool,
    pub knowledge_threshold: f64,
    /// First trial with mean knowledge at or above the threshold.
    pub trial_at_threshold: Option<usize>,
    pub best_knowledge_pct: Option<f64>,
    pub max_numerosity: Option<f64>,
    pub avg_numerosity: Option<f64>,
    pub avg_reliable: Option<f64>,
    /// Mean numerosity minus mean reliable count.
    pub difference: Option<f64>,
    pub explore_steps_mean: f64,
    pub exploit_steps_mean: Option<f64>,
    /// Mean number of successful trials per repeat, by phase.
    pub explore_successes_mean: f64,
    pub exploit_successes_mean: Option<f64>,
    /// Mean wall-clock seconds per repeat, by phase.
    pub explore_time_s_mean: f64,
    pub exploit_time_s_mean: Option<f64>,
}

/// Everything a run produced: one record series per repeat plus the
/// aggregate summary.
#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub per_repeat: Vec<Vec<MetricsRecord>>,
    pub summary: Summary,
}

impl ExperimentOutcome {
    /// Across-repeat mean knowledge per sampled trial.
    pub fn mean_knowledge_curve(&self) -> Vec<(usize, f64)> {
        mean_curve(&self.per_repeat, |r| r.knowledge_pct)
    }

    /// Across-repeat mean numerosity per sampled trial.
    pub fn mean_numerosity_curve(&self) -> Vec<(usize, f64)> {
        mean_curve(&self.per_repeat, |r| r.numerosity.map(|n| n as f64))
    }

    /// Across-repeat mean reliable count per sampled trial.
    pub fn mean_reliable_curve(&self) -> Vec<(usize, f64)> {
        mean_curve(&self.per_repeat, |r| r.reliable.map(|n| n as f64))
    }
}

fn build_env(config: &ExperimentConfig) -> Box<dyn Environment> {
    match config.env {
        EnvKind::Maze6 => Box::new(maze6()),
        EnvKind::FrozenLake => Box::new(frozen_lake_4x4(config.slippery)),
    }
}

/// Runs the configured number of independent repeats (concurrently, up to
/// `ALCS_THREADS`) and aggregates their metrics. Records come back ordered
/// by repeat index regardless of scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, ExperimentError> {
    let params = config.resolve()?;
    let per_repeat = run_repeats(config, &params);
    let summary = summarize(config, &per_repeat);
    Ok(ExperimentOutcome {
        config: config.clone(),
        per_repeat,
        summary,
    })
}

fn run_repeats(config: &ExperimentConfig, params: &EngineParams) -> Vec<Vec<MetricsRecord>> {
    let threads = std::env::var(THREADS_ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    let run_all = || {
        use rayon::prelude::*;
        (0..config.repeats)
            .into_par_iter()
            .map(|repeat| run_single(config, params, repeat))
            .collect()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(run_all),
        None => run_all(),
    }
}

fn run_single(
    config: &ExperimentConfig,
    params: &EngineParams,
    repeat: usize,
) -> Vec<MetricsRecord> {
    let mut rng = StdRng::seed_from_u64(config.seed.wrapping_add(repeat as u64));
    let mut env = build_env(config);
    let mut pop = Population::new();
    let mut rm = ReplayMemory::new(params.memory_capacity, params.warmup);
    let mut t_global: u64 = 0;

    let oracle: Option<Vec<OracleTransition>> = env.enumerate_transitions().ok();
    let goal_segment = match config.algo {
        Algorithm::Acs2Her => Some(env.encode_goal(env.goal())),
        _ => None,
    };

    let total = config.explore_trials + config.exploit_trials;
    let mut records = Vec::with_capacity(total);
    for trial in 1..=total {
        let explore = trial <= config.explore_trials;
        let result = match config.algo {
            Algorithm::Acs2 => {
                run_acs2_trial(env.as_mut(), &mut pop, params, &mut t_global, explore, &mut rng)
            }
            Algorithm::Acs2Er => run_acs2er_trial(
                env.as_mut(),
                &mut pop,
                &mut rm,
                params,
                &mut t_global,
                explore,
                &mut rng,
            ),
            Algorithm::Acs2Her => run_acs2her_trial(
                env.as_mut(),
                &mut pop,
                &mut rm,
                params,
                &mut t_global,
                explore,
                &mut rng,
            ),
        };
        let sampled = trial % config.metrics_every == 0;
        records.push(MetricsRecord {
            trial,
            phase: if explore { Phase::Explore } else { Phase::Exploit },
            numerosity: sampled.then(|| pop.total_numerosity()),
            reliable: sampled.then(|| pop.reliable_count(params.theta_r) as u64),
            knowledge_pct: match (&oracle, sampled) {
                (Some(oracle), true) => {
                    Some(knowledge(&pop, oracle, params.theta_r, goal_segment.as_ref()))
                }
                _ => None,
            },
            steps: result.steps,
            success: result.reached_goal,
            elapsed_s: result.elapsed.as_secs_f64(),
        });
    }
    records
}

/// Across-repeat mean of an optional per-record metric, over the trials
/// where it was sampled.
pub(crate) fn mean_curve(
    per_repeat: &[Vec<MetricsRecord>],
    value: impl Fn(&MetricsRecord) -> Option<f64>,
) -> Vec<(usize, f64)> {
    let Some(first) = per_repeat.first() else {
        return Vec::new();
    };
    first
        .iter()
        .enumerate()
        .filter_map(|(i, record)| {
            value(record)?;
            let mut sum = 0.0;
            let mut n = 0;
            for series in per_repeat {
                if let Some(v) = value(&series[i]) {
                    sum += v;
                    n += 1;
                }
            }
            (n == per_repeat.len()).then(|| (record.trial, sum / n as f64))
        })
        .collect()
}

fn phase_mean(
    per_repeat: &[Vec<MetricsRecord>],
    phase: Phase,
    value: impl Fn(&MetricsRecord) -> f64,
) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for series in per_repeat {
        for record in series.iter().filter(|r| r.phase == phase) {
            sum += value(record);
            n += 1;
        }
    }
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Mean over repeats of a per-repeat phase aggregate.
fn per_repeat_mean(
    per_repeat: &[Vec<MetricsRecord>],
    phase: Phase,
    aggregate: impl Fn(&[&MetricsRecord]) -> f64,
) -> f64 {
    if per_repeat.is_empty() {
        return 0.0;
    }
    let sum: f64 = per_repeat
        .iter()
        .map(|series| {
            let records: Vec<&MetricsRecord> =
                series.iter().filter(|r| r.phase == phase).collect();
            aggregate(&records)
        })
        .sum();
    sum / per_repeat.len() as f64
}

fn summarize(config: &ExperimentConfig, per_repeat: &[Vec<MetricsRecord>]) -> Summary {
    let knowledge_curve = mean_curve(per_repeat, |r| r.knowledge_pct);
    let knowledge_measured = !knowledge_curve.is_empty();
    let trial_at_threshold = if !knowledge_measured {
        None
    } else if config.threshold_per_repeat {
        per_repeat_threshold(per_repeat, config.knowledge_threshold)
    } else {
        trial_of_threshold(&knowledge_curve, config.knowledge_threshold)
    };
    let best_knowledge_pct = knowledge_curve
        .iter()
        .map(|&(_, k)| k)
        .fold(None, |acc: Option<f64>, k| Some(acc.map_or(k, |a| a.max(k))));

    let numerosity_curve = mean_curve(per_repeat, |r| r.numerosity.map(|n| n as f64));
    let reliable_curve = mean_curve(per_repeat, |r| r.reliable.map(|n| n as f64));
    let series_mean = |curve: &[(usize, f64)]| {
        (!curve.is_empty())
            .then(|| curve.iter().map(|&(_, v)| v).sum::<f64>() / curve.len() as f64)
    };
    let max_numerosity = numerosity_curve
        .iter()
        .map(|&(_, v)| v)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
    let avg_numerosity = series_mean(&numerosity_curve);
    let avg_reliable = series_mean(&reliable_curve);
    let difference = avg_numerosity.zip(avg_reliable).map(|(n, r)| n - r);

    let has_exploit = config.exploit_trials > 0;
    let success_count =
        |records: &[&MetricsRecord]| records.iter().filter(|r| r.success).count() as f64;
    let time_total = |records: &[&MetricsRecord]| records.iter().map(|r| r.elapsed_s).sum();

    Summary {
        label: config.label(),
        algo: config.algo,
        env: config.env,
        batch_size: match config.algo {
            Algorithm::Acs2 => None,
            _ => Some(config.batch_size.unwrap_or(8)),
        },
        hindsight_count: match config.algo {
            Algorithm::Acs2Her => Some(config.hindsight_count.unwrap_or(1)),
            _ => None,
        },
        strategy: match config.algo {
            Algorithm::Acs2Her => Some(config.strategy.unwrap_or_else(|| {
                GoalStrategy::default_for(config.hindsight_count.unwrap_or(1))
            })),
            _ => None,
        },
        repeats: config.repeats,
        explore_trials: config.explore_trials,
        exploit_trials: config.exploit_trials,
        knowledge_measured,
        knowledge_threshold: config.knowledge_threshold,
        trial_at_threshold,
        best_knowledge_pct,
        max_numerosity,
        avg_numerosity,
        avg_reliable,
        difference,
        explore_steps_mean: phase_mean(per_repeat, Phase::Explore, |r| r.steps as f64),
        exploit_steps_mean: has_exploit
            .then(|| phase_mean(per_repeat, Phase::Exploit, |r| r.steps as f64)),
        explore_successes_mean: per_repeat_mean(per_repeat, Phase::Explore, success_count),
        exploit_successes_mean: has_exploit
            .then(|| per_repeat_mean(per_repeat, Phase::Exploit, success_count)),
        explore_time_s_mean: per_repeat_mean(per_repeat, Phase::Explore, time_total),
        exploit_time_s_mean: has_exploit
            .then(|| per_repeat_mean(per_repeat, Phase::Exploit, time_total)),
    }
}

/// Averages the per-repeat threshold-crossing trials; `None` when any
/// repeat never crosses.
fn per_repeat_threshold(per_repeat: &[Vec<MetricsRecord>], threshold: f64) -> Option<usize> {
    let mut crossings = Vec::with_capacity(per_repeat.len());
    for series in per_repeat {
        let curve: Vec<(usize, f64)> = series
            .iter()
            .filter_map(|r| r.knowledge_pct.map(|k| (r.trial, k)))
            .collect();
        crossings.push(trial_of_threshold(&curve, threshold)?);
    }
    let mean = crossings.iter().sum::<usize>() as f64 / crossings.len() as f64;
    Some(mean.round() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(Algorithm::Acs2, EnvKind::Maze6);
        cfg.repeats = 2;
        cfg.explore_trials = 40;
        cfg.exploit_trials = 10;
        cfg.metrics_every = 10;
        cfg.seed = 5;
        cfg
    }

    #[test]
    fn runs_capture_metrics_on_the_sampling_cadence() {
        let outcome = run_experiment(&small_config()).unwrap();
        assert_eq!(outcome.per_repeat.len(), 2);
        for series in &outcome.per_repeat {
            assert_eq!(series.len(), 50);
            for record in series {
                let sampled = record.trial % 10 == 0;
                assert_eq!(record.numerosity.is_some(), sampled);
                assert_eq!(record.reliable.is_some(), sampled);
                assert_eq!(record.knowledge_pct.is_some(), sampled);
                assert!(record.steps >= 1);
                assert!(record.elapsed_s >= 0.0);
                if let (Some(n), Some(r)) = (record.numerosity, record.reliable) {
                    assert!(r <= n);
                }
            }
        }
        assert!(outcome.summary.knowledge_measured);
        assert!(outcome.summary.explore_steps_mean > 0.0);
        assert!(outcome.summary.difference.unwrap() >= 0.0);
    }

    #[test]
    fn learning_metrics_are_reproducible_under_a_fixed_seed() {
        let a = run_experiment(&small_config()).unwrap();
        let b = run_experiment(&small_config()).unwrap();
        for (ra, rb) in a.per_repeat.iter().zip(b.per_repeat.iter()) {
            for (x, y) in ra.iter().zip(rb.iter()) {
                assert_eq!(x.trial, y.trial);
                assert_eq!(x.steps, y.steps);
                assert_eq!(x.success, y.success);
                assert_eq!(x.numerosity, y.numerosity);
                assert_eq!(x.reliable, y.reliable);
                assert_eq!(x.knowledge_pct, y.knowledge_pct);
            }
        }
    }

    #[test]
    fn aggregation_is_invariant_under_repeat_permutation() {
        let outcome = run_experiment(&small_config()).unwrap();
        let mut reversed = outcome.per_repeat.clone();
        reversed.reverse();
        let straight = mean_curve(&outcome.per_repeat, |r| r.knowledge_pct);
        let permuted = mean_curve(&reversed, |r| r.knowledge_pct);
        assert_eq!(straight.len(), permuted.len());
        for ((t1, k1), (t2, k2)) in straight.iter().zip(permuted.iter()) {
            assert_eq!(t1, t2);
            assert!((k1 - k2).abs() < 1e-9);
        }
    }

    #[test]
    fn stochastic_environments_skip_knowledge() {
        let mut cfg = ExperimentConfig::new(Algorithm::Acs2, EnvKind::FrozenLake);
        cfg.repeats = 1;
        cfg.explore_trials = 30;
        cfg.exploit_trials = 0;
        cfg.metrics_every = 10;
        let outcome = run_experiment(&cfg).unwrap();
        assert!(!outcome.summary.knowledge_measured);
        assert!(outcome.summary.best_knowledge_pct.is_none());
        assert!(outcome.summary.exploit_steps_mean.is_none());
        for record in &outcome.per_repeat[0] {
            assert!(record.knowledge_pct.is_none());
        }
    }

    #[test]
    fn invalid_combinations_fail_before_running() {
        let mut cfg = small_config();
        cfg.hindsight_count = Some(2); // k with acs2
        assert!(matches!(
            run_experiment(&cfg),
            Err(ExperimentError::Config(_))
        ));
    }
}
