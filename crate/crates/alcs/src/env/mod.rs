//! Benchmark environments with a common step/reset contract, perception
//! codecs, goal exposure and a deterministic transition-enumeration oracle.
//!
//! Maps use a one-row-per-line ASCII format: `W` wall, `.` path, `S`
//! start, `H` hole, `G` goal. The two built-in layouts are embedded and
//! also shipped under `maps/`.

mod corridor;
mod frozen_lake;
mod maze;

pub use corridor::Corridor;
pub use frozen_lake::{frozen_lake_4x4, FrozenLake, FROZEN_LAKE_4X4_MAP};
pub use maze::{maze6, GridMaze, MAZE6_MAP};

use crate::hindsight::GoalId;
use crate::perception::Perception;
use rand::rngs::StdRng;
use std::error::Error;
use std::fmt;

/// Static description of an environment's interface.
#[derive(Clone, Debug)]
pub struct EnvSpec {
    pub perception_length: usize,
    pub goal_segment_length: usize,
    pub alphabet: Vec<u8>,
    pub action_count: usize,
    pub goal_reward: f64,
    pub deterministic: bool,
}

/// Result of one environment step.
#[derive(Clone, Debug)]
pub struct Step {
    pub observation: Perception,
    pub reward: f64,
    pub done: bool,
}

/// One entry of the deterministic transition oracle.
#[derive(Clone, Debug)]
pub struct OracleTransition {
    pub state: Perception,
    pub state_id: GoalId,
    pub action: usize,
    pub next_state: Perception,
    pub next_state_id: GoalId,
}

/// Raised when the transition oracle is requested from a stochastic
/// environment.
#[derive(Debug)]
pub struct StochasticDynamics;

impl fmt::Display for StochasticDynamics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "transition oracle requires deterministic dynamics")
    }
}

impl Error for StochasticDynamics {}

/// Common contract of the benchmark environments.
pub trait Environment {
    fn spec(&self) -> &EnvSpec;

    /// Starts a new trial and returns the initial observation.
    fn reset(&mut self, rng: &mut StdRng) -> Perception;

    /// Executes an action.
    fn step(&mut self, action: usize, rng: &mut StdRng) -> Step;

    /// Current observation without stepping.
    fn observe(&self) -> Perception;

    /// Canonical id of the current state.
    fn state_id(&self) -> GoalId;

    /// Canonical id of the environment goal.
    fn goal(&self) -> GoalId;

    /// Fixed-length, injective goal encoding used for perception
    /// augmentation. Panics on ids outside the grid.
    fn encode_goal(&self, goal: GoalId) -> Perception;

    /// Places the agent at a given state; intended for oracle replay and
    /// policy inspection.
    fn set_state(&mut self, id: GoalId);

    /// Exhaustive (state, action, next state) listing over all non-terminal
    /// path states, computed by direct simulation of the dynamics.
    fn enumerate_transitions(&self) -> Result<Vec<OracleTransition>, StochasticDynamics>;
}

/// Cell classification of a grid map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cell {
    Wall,
    Path,
    Start,
    Hole,
    Goal,
}

/// Error raised while parsing an ASCII map.
#[derive(Debug, PartialEq, Eq)]
pub enum MapError {
    Empty,
    NotRectangular { line: usize },
    UnknownSymbol { line: usize, symbol: char },
    NoGoal,
    MultipleGoals,
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Empty => write!(f, "map has no rows"),
            MapError::NotRectangular { line } => {
                write!(f, "map row {line} differs in length from the first row")
            }
            MapError::UnknownSymbol { line, symbol } => {
                write!(f, "unknown map symbol '{symbol}' on row {line} (expected W . S H G)")
            }
            MapError::NoGoal => write!(f, "map declares no goal cell"),
            MapError::MultipleGoals => write!(f, "map declares more than one goal cell"),
        }
    }
}

impl Error for MapError {}

/// Rectangular grid of cells parsed from the ASCII map format.
#[derive(Clone, Debug)]
pub struct GridMap {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
}

impl GridMap {
    /// Parses a map, validating rectangularity and the single-goal rule.
    pub fn parse(text: &str) -> Result<GridMap, MapError> {
        let mut cells = Vec::new();
        let mut width = 0;
        let mut height = 0;
        for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let row: Vec<Cell> = line
                .trim_end()
                .chars()
                .map(|c| match c {
                    'W' => Ok(Cell::Wall),
                    '.' => Ok(Cell::Path),
                    'S' => Ok(Cell::Start),
                    'H' => Ok(Cell::Hole),
                    'G' => Ok(Cell::Goal),
                    other => Err(MapError::UnknownSymbol { line: i + 1, symbol: other }),
                })
                .collect::<Result<_, _>>()?;
            if i == 0 {
                width = row.len();
            } else if row.len() != width {
                return Err(MapError::NotRectangular { line: i + 1 });
            }
            cells.extend(row);
            height += 1;
        }
        if height == 0 || width == 0 {
            return Err(MapError::Empty);
        }
        let goals = cells.iter().filter(|&&c| c == Cell::Goal).count();
        match goals {
            0 => Err(MapError::NoGoal),
            1 => Ok(GridMap { width, height, cells }),
            _ => Err(MapError::MultipleGoals),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell(&self, x: usize, y: usize) -> Cell {
        self.cells[y * self.width + x]
    }

    pub fn cell_at(&self, id: GoalId) -> Cell {
        self.cells[id.0]
    }

    pub fn index(&self, x: usize, y: usize) -> GoalId {
        GoalId(y * self.width + x)
    }

    pub fn coords(&self, id: GoalId) -> (usize, usize) {
        (id.0 % self.width, id.0 / self.width)
    }

    /// The unique goal cell.
    pub fn goal(&self) -> GoalId {
        let idx = self
            .cells
            .iter()
            .position(|&c| c == Cell::Goal)
            .expect("validated map has a goal");
        GoalId(idx)
    }

    /// All walkable non-goal cells (path and start).
    pub fn walkable_cells(&self) -> Vec<GoalId> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Cell::Path || c == Cell::Start)
            .map(|(i, _)| GoalId(i))
            .collect()
    }

    /// Start cells if declared, otherwise every walkable cell.
    pub fn start_cells(&self) -> Vec<GoalId> {
        let starts: Vec<GoalId> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Cell::Start)
            .map(|(i, _)| GoalId(i))
            .collect();
        if starts.is_empty() {
            self.walkable_cells()
        } else {
            starts
        }
    }

    /// True iff every walkable cell can reach the goal through non-wall
    /// cells using the given neighbor offsets (flood fill from the goal).
    pub fn fully_connected(&self, moves: &[(i32, i32)]) -> bool {
        let mut reached = vec![false; self.cells.len()];
        let goal = self.goal();
        reached[goal.0] = true;
        let mut queue = vec![goal];
        while let Some(cell) = queue.pop() {
            let (x, y) = self.coords(cell);
            for &(dx, dy) in moves {
                let nx = x as i32 + dx;
                let ny = y as i32 + dy;
                if nx < 0 || ny < 0 || nx >= self.width as i32 || ny >= self.height as i32 {
                    continue;
                }
                let nid = self.index(nx as usize, ny as usize);
                if !reached[nid.0] && self.cell_at(nid) != Cell::Wall {
                    reached[nid.0] = true;
                    queue.push(nid);
                }
            }
        }
        self.walkable_cells().iter().all(|c| reached[c.0])
    }
}

/// Lowercase base-16 digit for values 0..=15.
pub(crate) fn hex_digit(v: usize) -> u8 {
    assert!(v < 16, "value {v} not encodable as a single base-16 digit");
    b"0123456789abcdef"[v]
}
