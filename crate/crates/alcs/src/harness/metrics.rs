//! The per-trial metrics snapshot and the two knowledge-series operations.

use crate::env::OracleTransition;
use crate::hindsight::augment;
use crate::perception::Perception;
use crate::population::Population;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Trial phase: ε-greedy exploration or pure greedy exploitation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Phase {
    Explore,
    Exploit,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Explore => write!(f, "explore"),
            Phase::Exploit => write!(f, "exploit"),
        }
    }
}

impl FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explore" => Ok(Phase::Explore),
            "exploit" => Ok(Phase::Exploit),
            other => Err(format!("unknown phase '{other}'")),
        }
    }
}

/// One trial's snapshot. Steps, success and wall-clock are captured every
/// trial; population statistics and knowledge only on the sampling cadence
/// (and knowledge only for deterministic environments).
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub trial: usize,
    pub phase: Phase,
    pub numerosity: Option<u64>,
    pub reliable: Option<u64>,
    pub knowledge_pct: Option<f64>,
    pub steps: usize,
    pub success: bool,
    pub elapsed_s: f64,
}

/// Percentage of oracle transitions anticipated by at least one reliable
/// classifier: the classifier must advocate the transition's action, match
/// its start perception and predict its outcome exactly. For goal-
/// conditioned populations the oracle perceptions are augmented with the
/// true environment goal before matching.
pub fn knowledge(
    pop: &Population,
    oracle: &[OracleTransition],
    theta_r: f64,
    goal_segment: Option<&Perception>,
) -> f64 {
    assert!(!oracle.is_empty(), "knowledge needs a nonempty oracle");
    let reliable: Vec<_> = pop
        .iter()
        .map(|(_, cl)| cl)
        .filter(|cl| cl.is_reliable(theta_r))
        .collect();
    if reliable.is_empty() {
        return 0.0;
    }
    let covered = oracle
        .iter()
        .filter(|tr| {
            let (state, next) = match goal_segment {
                Some(g) => (augment(&tr.state, g), augment(&tr.next_state, g)),
                None => (tr.state.clone(), tr.next_state.clone()),
            };
            reliable.iter().any(|cl| {
                cl.action == tr.action
                    && cl.matches(&state)
                    && cl.anticipates_correctly(&state, &next)
            })
        })
        .count();
    100.0 * covered as f64 / oracle.len() as f64
}

/// First trial of a knowledge series at or above the threshold; `None`
/// when the threshold is never reached.
pub fn trial_of_threshold(series: &[(usize, f64)], threshold: f64) -> Option<usize> {
    series
        .iter()
        .find(|(_, k)| *k >= threshold)
        .map(|(trial, _)| *trial)
}
