//! Goal augmentation, virtual-goal selection and hindsight reward
//! relabeling.
//!
//! A failed episode is replayed against goals the agent actually reached:
//! every recorded step is re-labeled with virtual goals drawn from the
//! trajectory, earning the goal reward whenever the step's outcome equals
//! the virtual goal. Perceptions are goal-conditioned by concatenating a
//! fixed-length goal encoding onto the raw observation.

use crate::perception::Perception;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Canonical state identifier (row-major cell index in the grid
/// environments). Goals and reached states are compared by this identity,
/// never by raw observation, since observations need not identify cells
/// uniquely.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GoalId(pub usize);

impl fmt::Display for GoalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How virtual goals are drawn from a trajectory.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GoalStrategy {
    /// The single last state reached in the episode.
    Final,
    /// States visited after the step being relabeled.
    Future,
}

impl GoalStrategy {
    /// Default strategy given the hindsight factor: `final` for k = 1,
    /// `future` for larger k.
    pub fn default_for(k: usize) -> Self {
        if k <= 1 {
            GoalStrategy::Final
        } else {
            GoalStrategy::Future
        }
    }
}

impl fmt::Display for GoalStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoalStrategy::Final => write!(f, "final"),
            GoalStrategy::Future => write!(f, "future"),
        }
    }
}

impl FromStr for GoalStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "final" => Ok(GoalStrategy::Final),
            "future" => Ok(GoalStrategy::Future),
            other => Err(format!("unknown goal strategy '{other}' (expected final|future)")),
        }
    }
}

/// One recorded step of an episode, kept un-augmented together with the
/// canonical ids of its endpoints.
#[derive(Clone, Debug)]
pub struct TrajectoryStep {
    pub state: Perception,
    pub state_id: GoalId,
    pub action: usize,
    pub reward: f64,
    pub next_state: Perception,
    pub next_state_id: GoalId,
    pub done: bool,
}

/// Concatenates the encoded goal segment onto a plain observation.
pub fn augment(observation: &Perception, goal_segment: &Perception) -> Perception {
    observation.concat(goal_segment)
}

/// Virtual goals for the step at `step_index` of `trajectory`.
///
/// `final` always yields the last state reached in the episode, regardless
/// of `k`. `future` draws `min(k, remaining)` outcomes uniformly from the
/// steps at `step_index` or later — without replacement over steps unless
/// `with_replacement` is set. Empty trajectories yield nothing.
pub fn additional_goals(
    strategy: GoalStrategy,
    k: usize,
    trajectory: &[TrajectoryStep],
    step_index: usize,
    with_replacement: bool,
    rng: &mut impl Rng,
) -> Vec<GoalId> {
    if trajectory.is_empty() {
        return Vec::new();
    }
    assert!(step_index < trajectory.len(), "step index out of range");
    match strategy {
        GoalStrategy::Final => vec![trajectory.last().unwrap().next_state_id],
        GoalStrategy::Future => {
            let pool: Vec<GoalId> = trajectory[step_index..]
                .iter()
                .map(|s| s.next_state_id)
                .collect();
            if with_replacement {
                (0..k).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
            } else {
                let take = k.min(pool.len());
                rand::seq::index::sample(rng, pool.len(), take)
                    .into_iter()
                    .map(|i| pool[i])
                    .collect()
            }
        }
    }
}

/// Reward of a relabeled transition: the goal reward exactly when the
/// reached state is the virtual goal, zero otherwise.
pub fn hindsight_reward(reached: GoalId, virtual_goal: GoalId, goal_reward: f64) -> f64 {
    if reached == virtual_goal {
        goal_reward
    } else {
        0.0
    }
}
