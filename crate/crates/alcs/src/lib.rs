//! Anticipatory learning classifier systems.
//!
//! This crate implements ACS2 — a rule-based reinforcement learner whose
//! classifiers predict the next perception, not just the reward — together
//! with two replay extensions:
//!
//! * **ACS2ER** — a bounded FIFO replay memory with warm-up gating and
//!   uniform mini-batch learning,
//! * **ACS2HER** — failure-triggered hindsight goal relabeling over
//!   goal-augmented perceptions.
//!
//! Two benchmark grid environments (a 9×9 maze and the 4×4 slippery lake)
//! and an experiment harness (repeats, metrics, CSV/report output) round
//! out the package so comparative studies can be run end to end from the
//! `alcs-her` binary.

pub mod alp;
pub mod classifier;
pub mod engine;
pub mod env;
pub mod ga;
pub mod harness;
pub mod hindsight;
pub mod perception;
pub mod population;
pub mod replay;
pub mod rl;

pub use classifier::Classifier;
pub use engine::{EngineParams, TrialResult};
pub use env::{EnvSpec, Environment, GridMap, OracleTransition};
pub use hindsight::{GoalId, GoalStrategy, TrajectoryStep};
pub use perception::{Condition, Effect, Mark, Perception, WILDCARD};
pub use population::{ClassifierId, Population};
pub use replay::{ReplayMemory, Transition};
