//! Minimal 1×n corridor used as a hand-enumerable fixture.

use super::{EnvSpec, Environment, OracleTransition, Step, StochasticDynamics};
use crate::hindsight::GoalId;
use crate::perception::Perception;
use rand::rngs::StdRng;
use rand::Rng;

/// A one-row corridor of `len` cells with the goal at the right end.
/// Observation is the cell index as one base-16 symbol; actions are
/// 0 (left) and 1 (right), walking off the ends stays in place.
#[derive(Clone, Debug)]
pub struct Corridor {
    len: usize,
    spec: EnvSpec,
    agent: usize,
}

impl Corridor {
    pub fn new(len: usize) -> Self {
        assert!(len >= 2 && len <= 16);
        let spec = EnvSpec {
            perception_length: 1,
            goal_segment_length: 1,
            alphabet: (0..len).map(super::hex_digit).collect(),
            action_count: 2,
            goal_reward: 1000.0,
            deterministic: true,
        };
        Corridor { len, spec, agent: 0 }
    }

    fn destination(&self, cell: usize, action: usize) -> usize {
        match action {
            0 => cell.saturating_sub(1),
            1 => (cell + 1).min(self.len - 1),
            _ => panic!("corridor has two actions"),
        }
    }

    fn observe_at(&self, cell: usize) -> Perception {
        Perception::new(vec![super::hex_digit(cell)])
    }
}

impl Environment for Corridor {
    fn spec(&self) -> &EnvSpec {
        &self.spec
    }

    fn reset(&mut self, rng: &mut StdRng) -> Perception {
        self.agent = rng.gen_range(0..self.len - 1); // never the goal
        self.observe()
    }

    fn step(&mut self, action: usize, _rng: &mut StdRng) -> Step {
        self.agent = self.destination(self.agent, action);
        let done = self.agent == self.len - 1;
        Step {
            observation: self.observe(),
            reward: if done { self.spec.goal_reward } else { 0.0 },
            done,
        }
    }

    fn observe(&self) -> Perception {
        self.observe_at(self.agent)
    }

    fn state_id(&self) -> GoalId {
        GoalId(self.agent)
    }

    fn goal(&self) -> GoalId {
        GoalId(self.len - 1)
    }

    fn encode_goal(&self, goal: GoalId) -> Perception {
        assert!(goal.0 < self.len);
        Perception::new(vec![super::hex_digit(goal.0)])
    }

    fn set_state(&mut self, id: GoalId) {
        assert!(id.0 < self.len);
        self.agent = id.0;
    }

    fn enumerate_transitions(&self) -> Result<Vec<OracleTransition>, StochasticDynamics> {
        let mut out = Vec::new();
        for cell in 0..self.len - 1 {
            for action in 0..2 {
                let next = self.destination(cell, action);
                out.push(OracleTransition {
                    state: self.observe_at(cell),
                    state_id: GoalId(cell),
                    action,
                    next_state: self.observe_at(next),
                    next_state_id: GoalId(next),
                });
            }
        }
        Ok(out)
    }
}
