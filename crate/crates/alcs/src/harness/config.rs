//! Experiment configuration and its validation.

use crate::engine::{Algorithm, EngineParams};
use crate::hindsight::GoalStrategy;
use serde::{Deserialize, Serialize};
use std::error::Error;
use std::fmt;
use std::str::FromStr;

/// Which benchmark environment to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EnvKind {
    Maze6,
    FrozenLake,
}

impl fmt::Display for EnvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnvKind::Maze6 => write!(f, "maze6"),
            EnvKind::FrozenLake => write!(f, "frozenlake"),
        }
    }
}

impl FromStr for EnvKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maze6" => Ok(EnvKind::Maze6),
            "frozenlake" => Ok(EnvKind::FrozenLake),
            other => Err(format!("unknown environment '{other}' (expected maze6|frozenlake)")),
        }
    }
}

/// Invalid parameter combination, reported before any run starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl Error for ConfigError {}

/// A full experiment: engine, environment, protocol counts and the
/// engine parameters. Replay and hindsight parameters are optional here so
/// that combinations foreign to the chosen engine can be rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algo: Algorithm,
    pub env: EnvKind,
    /// Slippery dynamics for the lake; ignored by the maze.
    pub slippery: bool,
    pub repeats: usize,
    pub explore_trials: usize,
    pub exploit_trials: usize,
    /// Mini-batch size m; only meaningful for the replay engines.
    pub batch_size: Option<usize>,
    /// Hindsight factor k; only meaningful for the hindsight engine.
    pub hindsight_count: Option<usize>,
    /// Virtual-goal strategy; defaults to `final` for k = 1, `future` above.
    pub strategy: Option<GoalStrategy>,
    /// Per-trial step cap; defaults to 50 on the maze and 100 on the lake.
    pub max_steps: Option<usize>,
    /// Knowledge/population sampling cadence in trials.
    pub metrics_every: usize,
    pub seed: u64,
    /// Base learning parameters; the optional fields above override their
    /// replay/hindsight slots after validation.
    pub params: EngineParams,
    /// Compute the threshold-crossing trial per repeat and average, instead
    /// of crossing the across-repeat mean curve.
    pub threshold_per_repeat: bool,
    /// Knowledge threshold for the crossing-trial summary column.
    pub knowledge_threshold: f64,
}

impl ExperimentConfig {
    pub fn new(algo: Algorithm, env: EnvKind) -> Self {
        ExperimentConfig {
            algo,
            env,
            slippery: true,
            repeats: 30,
            explore_trials: 2000,
            exploit_trials: 500,
            batch_size: None,
            hindsight_count: None,
            strategy: None,
            max_steps: None,
            metrics_every: 25,
            seed: 42,
            params: EngineParams::default(),
            threshold_per_repeat: false,
            knowledge_threshold: 95.0,
        }
    }

    /// Short directory-friendly identifier of the configuration.
    pub fn label(&self) -> String {
        let mut label = format!("{}_{}", self.env, self.algo);
        if self.algo != Algorithm::Acs2 {
            label.push_str(&format!("_m{}", self.batch_size.unwrap_or(8)));
        }
        if self.algo == Algorithm::Acs2Her {
            label.push_str(&format!("_k{}", self.hindsight_count.unwrap_or(1)));
        }
        label
    }

    /// Validates the combination and resolves the effective engine
    /// parameters.
    pub fn resolve(&self) -> Result<EngineParams, ConfigError> {
        if self.repeats == 0 {
            return Err(ConfigError("repeats must be positive".into()));
        }
        if self.explore_trials + self.exploit_trials == 0 {
            return Err(ConfigError("no trials configured".into()));
        }
        if self.metrics_every == 0 {
            return Err(ConfigError("metrics_every must be positive".into()));
        }
        match self.algo {
            Algorithm::Acs2 => {
                if self.batch_size.is_some() {
                    return Err(ConfigError("batch size m applies only to replay engines".into()));
                }
                if self.hindsight_count.is_some() || self.strategy.is_some() {
                    return Err(ConfigError(
                        "hindsight parameters apply only to acs2her".into(),
                    ));
                }
            }
            Algorithm::Acs2Er => {
                if self.hindsight_count.is_some() || self.strategy.is_some() {
                    return Err(ConfigError(
                        "hindsight parameters apply only to acs2her".into(),
                    ));
                }
            }
            Algorithm::Acs2Her => {}
        }
        if self.batch_size == Some(0) {
            return Err(ConfigError("batch size m must be positive".into()));
        }
        if self.hindsight_count == Some(0) {
            return Err(ConfigError("hindsight factor k must be positive".into()));
        }

        let mut params = self.params.clone();
        if let Some(m) = self.batch_size {
            params.batch_size = m;
        }
        let k = self.hindsight_count.unwrap_or(1);
        params.hindsight_count = k;
        params.strategy = self.strategy.unwrap_or_else(|| GoalStrategy::default_for(k));
        params.max_steps = self.max_steps.unwrap_or(match self.env {
            EnvKind::Maze6 => 50,
            EnvKind::FrozenLake => 100,
        });
        params.validate().map_err(ConfigError)?;
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_study_protocol() {
        let cfg = ExperimentConfig::new(Algorithm::Acs2, EnvKind::Maze6);
        assert_eq!(cfg.repeats, 30);
        assert_eq!(cfg.explore_trials, 2000);
        assert_eq!(cfg.exploit_trials, 500);
        assert_eq!(cfg.params.beta, 0.05);
        assert_eq!(cfg.params.gamma, 0.95);
        assert_eq!(cfg.params.theta_r, 0.9);
        assert_eq!(cfg.params.theta_i, 0.1);
        assert_eq!(cfg.params.epsilon, 0.5);
        assert_eq!(cfg.params.theta_ga, 100.0);
        assert_eq!(cfg.params.mu, 0.3);
        assert_eq!(cfg.params.chi, 0.8);
        assert_eq!(cfg.params.memory_capacity, 10_000);
        assert_eq!(cfg.params.warmup, 1000);
        assert!(!cfg.params.do_ga);
        assert!(cfg.resolve().is_ok());
    }

    #[test]
    fn hindsight_parameters_are_rejected_outside_acs2her() {
        let mut cfg = ExperimentConfig::new(Algorithm::Acs2, EnvKind::Maze6);
        cfg.hindsight_count = Some(2);
        assert!(cfg.resolve().is_err());

        let mut cfg = ExperimentConfig::new(Algorithm::Acs2Er, EnvKind::Maze6);
        cfg.strategy = Some(GoalStrategy::Future);
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn batch_size_is_rejected_for_the_online_engine() {
        let mut cfg = ExperimentConfig::new(Algorithm::Acs2, EnvKind::Maze6);
        cfg.batch_size = Some(8);
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn strategy_defaults_follow_the_hindsight_factor() {
        let mut cfg = ExperimentConfig::new(Algorithm::Acs2Her, EnvKind::Maze6);
        cfg.hindsight_count = Some(1);
        assert_eq!(cfg.resolve().unwrap().strategy, GoalStrategy::Final);
        cfg.hindsight_count = Some(3);
        assert_eq!(cfg.resolve().unwrap().strategy, GoalStrategy::Future);
    }

    #[test]
    fn max_steps_defaults_depend_on_the_environment() {
        let maze = ExperimentConfig::new(Algorithm::Acs2, EnvKind::Maze6);
        assert_eq!(maze.resolve().unwrap().max_steps, 50);
        let lake = ExperimentConfig::new(Algorithm::Acs2, EnvKind::FrozenLake);
        assert_eq!(lake.resolve().unwrap().max_steps, 100);
    }

    #[test]
    fn labels_identify_the_configuration() {
        let mut cfg = ExperimentConfig::new(Algorithm::Acs2Her, EnvKind::Maze6);
        cfg.batch_size = Some(8);
        cfg.hindsight_count = Some(2);
        assert_eq!(cfg.label(), "maze6_acs2her_m8_k2");
        assert_eq!(
            ExperimentConfig::new(Algorithm::Acs2, EnvKind::FrozenLake).label(),
            "frozenlake_acs2"
        );
    }
}
