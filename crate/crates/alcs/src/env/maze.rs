//! Woods-style maze: the agent sees its eight neighbors and moves in the
//! same eight directions.

use super::{Cell, EnvSpec, Environment, GridMap, OracleTransition, Step, StochasticDynamics};
use crate::hindsight::GoalId;
use crate::perception::Perception;
use rand::rngs::StdRng;
use rand::Rng;

/// The 9×9 maze layout used throughout the comparative study.
pub const MAZE6_MAP: &str = include_str!("../../maps/maze6.map");

/// Neighbor/move offsets in clockwise order starting north; observation
/// position i reports the cell reached by action i.
const DIRECTIONS: [(i32, i32); 8] = [
    (0, -1),  // N
    (1, -1),  // NE
    (1, 0),   // E
    (1, 1),   // SE
    (0, 1),   // S
    (-1, 1),  // SW
    (-1, 0),  // W
    (-1, -1), // NW
];

const SYM_PATH: u8 = b'0';
const SYM_WALL: u8 = b'1';
const SYM_GOAL: u8 = b'9';

/// Deterministic maze over an arbitrary wall/path/goal map. Trials start
/// at a uniformly random walkable cell (or a declared start cell), moving
/// into a wall leaves the position unchanged, and reaching the goal ends
/// the trial with the goal reward.
#[derive(Clone, Debug)]
pub struct GridMaze {
    map: GridMap,
    spec: EnvSpec,
    agent: GoalId,
}

impl GridMaze {
    pub fn from_map(map: GridMap, goal_reward: f64) -> Self {
        assert!(
            map.walkable_cells().iter().all(|&c| map.cell_at(c) != Cell::Hole),
            "maze maps do not support hole cells"
        );
        assert!(
            map.width() <= 16 && map.height() <= 16,
            "goal encoding uses one digit per axis"
        );
        let start = map.start_cells()[0];
        let spec = EnvSpec {
            perception_length: 8,
            goal_segment_length: 2,
            alphabet: vec![SYM_PATH, SYM_WALL, SYM_GOAL],
            action_count: 8,
            goal_reward,
            deterministic: true,
        };
        GridMaze { map, spec, agent: start }
    }

    pub fn map(&self) -> &GridMap {
        &self.map
    }

    /// Flood-fill reachability of the goal from every walkable cell.
    pub fn fully_connected(&self) -> bool {
        self.map.fully_connected(&DIRECTIONS)
    }

    fn observe_at(&self, cell: GoalId) -> Perception {
        let (x, y) = self.map.coords(cell);
        let symbols = DIRECTIONS
            .iter()
            .map(|&(dx, dy)| {
                let nx = x as i32 + dx;
                let ny = y as i32 + dy;
                if nx < 0
                    || ny < 0
                    || nx >= self.map.width() as i32
                    || ny >= self.map.height() as i32
                {
                    return SYM_WALL;
                }
                match self.map.cell(nx as usize, ny as usize) {
                    Cell::Wall => SYM_WALL,
                    Cell::Goal => SYM_GOAL,
                    Cell::Path | Cell::Start | Cell::Hole => SYM_PATH,
                }
            })
            .collect();
        Perception::new(symbols)
    }

    /// Destination of `action` from `cell`; walls and borders block.
    fn destination(&self, cell: GoalId, action: usize) -> GoalId {
        let (x, y) = self.map.coords(cell);
        let (dx, dy) = DIRECTIONS[action];
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
}

impl Environment for GridMaze {
    fn spec(&self) -> &EnvSpec {
        &self.spec
    }

    fn reset(&mut self, rng: &mut StdRng) -> Perception {
        let starts = self.map.start_cells();
        self.agent = starts[rng.gen_range(0..starts.len())];
        self.observe()
    }

    fn step(&mut self, action: usize, _rng: &mut StdRng) -> Step {
        assert!(action < self.spec.action_count);
        self.agent = self.destination(self.agent, action);
        let done = self.map.cell_at(self.agent) == Cell::Goal;
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
        let (x, y) = self.map.coords(goal);
        Perception::new(vec![super::hex_digit(x), super::hex_digit(y)])
    }

    fn set_state(&mut self, id: GoalId) {
        assert!(self.map.cell_at(id) != Cell::Wall, "cannot place agent on a wall");
        self.agent = id;
    }

    fn enumerate_transitions(&self) -> Result<Vec<OracleTransition>, StochasticDynamics> {
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

/// The built-in 9×9 maze with goal reward 1000.
pub fn maze6() -> GridMaze {
    let map = GridMap::parse(MAZE6_MAP).expect("embedded map is valid");
    GridMaze::from_map(map, 1000.0)
}
