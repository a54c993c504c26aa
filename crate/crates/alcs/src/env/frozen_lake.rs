//! The 4×4 lake-crossing task: reach the goal without falling into a
//! hole, optionally under slippery dynamics.

use super::{Cell, EnvSpec, Environment, GridMap, OracleTransition, Step, StochasticDynamics};
use crate::hindsight::GoalId;
use crate::perception::Perception;
use rand::rngs::StdRng;
use rand::Rng;

/// The 4×4 layout: start top-left, goal bottom-right, four holes.
pub const FROZEN_LAKE_4X4_MAP: &str = include_str!("../../maps/frozen_lake_4x4.map");

/// Move offsets indexed by action: left, down, right, up.
const DIRECTIONS: [(i32, i32); 4] = [(-1, 0), (0, 1), (1, 0), (0, -1)];

/// Lake environment over a start/hole/goal map. The observation is a
/// single base-16 symbol holding the cell index. Under slippery dynamics
/// the executed move is the intended direction or either perpendicular,
/// each with probability 1/3.
#[derive(Clone, Debug)]
pub struct FrozenLake {
    map: GridMap,
    spec: EnvSpec,
    slippery: bool,
    agent: GoalId,
}

impl FrozenLake {
    pub fn from_map(map: GridMap, slippery: bool) -> Self {
        let cells = map.width() * map.height();
        assert!(cells <= 16, "observation uses one base-16 symbol");
        let start = map.start_cells()[0];
        let spec = EnvSpec {
            perception_length: 1,
            goal_segment_length: 1,
            alphabet: (0..cells).map(super::hex_digit).collect(),
            action_count: 4,
            goal_reward: 1.0,
            deterministic: !slippery,
        };
        FrozenLake { map, spec, slippery, agent: start }
    }

    pub fn map(&self) -> &GridMap {
        &self.map
    }

    pub fn is_slippery(&self) -> bool {
        self.slippery
    }

    /// Destination of moving in `direction` from `cell`; grid borders and
    /// walls block.
    fn destination(&self, cell: GoalId, direction: usize) -> GoalId {
        let (x, y) = self.map.coords(cell);
        let (dx, dy) = DIRECTIONS[direction];
        let nx = x as i32 + dx;
        let ny = y as i32 + dy;
        if nx < 0 || ny < 0 || nx >= self.map.width() as i32 || ny >= self.map.height() as i32 {
            return cell;
        }
        let target = self.map.index(nx as usize, ny as usize);
        if self.map.cell_at(target) == Cell::Wall {
            cell
        } else {
            target
        }
    }

    fn observe_at(&self, cell: GoalId) -> Perception {
        Perception::new(vec![super::hex_digit(cell.0)])
    }
}

impl Environment for FrozenLake {
    fn spec(&self) -> &EnvSpec {
        &self.spec
    }

    fn reset(&mut self, rng: &mut StdRng) -> Perception {
        let starts = self.map.start_cells();
        self.agent = starts[rng.gen_range(0..starts.len())];
        self.observe()
    }

    fn step(&mut self, action: usize, rng: &mut StdRng) -> Step {
        assert!(action < self.spec.action_count);
        let executed = if self.slippery {
            // intended or either perpendicular, 1/3 each
            (action + [3, 0, 1][rng.gen_range(0..3)]) % 4
        } else {
            action
        };
        self.agent = self.destination(self.agent, executed);
        let (reward, done) = match self.map.cell_at(self.agent) {
            Cell::Goal => (self.spec.goal_reward, true),
            Cell::Hole => (0.0, true),
            _ => (0.0, false),
        };
        Step { observation: self.observe(), reward, done }
    }

    fn observe(&self) -> Perception {
        self.observe_at(self.agent)
    }

    fn state_id(&self) -> GoalId {
        self.agent
    }

    fn goal(&self) -> GoalId {
        self.map.goal()
    }

    fn encode_goal(&self, goal: GoalId) -> Perception {
        assert!(
            goal.0 < self.map.width() * self.map.height(),
            "goal id outside the grid"
        );
        Perception::new(vec![super::hex_digit(goal.0)])
    }

    fn set_state(&mut self, id: GoalId) {
        assert!(self.map.cell_at(id) != Cell::Wall, "cannot place agent on a wall");
        self.agent = id;
    }

    fn enumerate_transitions(&self) -> Result<Vec<OracleTransition>, StochasticDynamics> {
        if self.slippery {
            return Err(StochasticDynamics);
        }
        let mut out = Vec::new();
        for cell in self.map.walkable_cells() {
            let state = self.observe_at(cell);
            for action in 0..self.spec.action_count {
                let next = self.destination(cell, action);
                out.push(OracleTransition {
                    state: state.clone(),
                    state_id: cell,
                    action,
                    next_state: self.observe_at(next),
                    next_state_id: next,
                });
            }
        }
        Ok(out)
    }
}

/// The built-in 4×4 lake.
pub fn frozen_lake_4x4(slippery: bool) -> FrozenLake {
    let map = GridMap::parse(FROZEN_LAKE_4X4_MAP).expect("embedded map is valid");
    FrozenLake::from_map(map, slippery)
}
