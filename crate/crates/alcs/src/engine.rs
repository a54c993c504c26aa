//! The three trial-execution loops.
//!
//! * `run_acs2_trial` — fully online learning: ALP/RL/GA are applied to
//!   the previous action set each step and once more on the terminal step.
//! * `run_acs2er_trial` — every transition goes into the replay memory and
//!   all learning happens through sampled mini-batches once the buffer is
//!   warm; there is no online update path.
//! * `run_acs2her_trial` — a learning-free rollout over goal-augmented
//!   perceptions; only when the episode fails to reach the goal is the
//!   trajectory buffered (real transitions plus up to k relabeled virtual
//!   ones per step) and replay-learned from.

use crate::alp::{self, AlpParams};
use crate::env::Environment;
use crate::ga::{self, GaParams};
use crate::hindsight::{additional_goals, augment, hindsight_reward, GoalStrategy, TrajectoryStep};
use crate::population::{select_action, ClassifierId, Population};
use crate::replay::{er_learn_step, ReplayMemory, Transition};
use crate::rl;
use rand::rngs::StdRng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::{Duration, Instant};

/// Which engine drives a trial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Algorithm {
    Acs2,
    Acs2Er,
    Acs2Her,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Acs2 => write!(f, "acs2"),
            Algorithm::Acs2Er => write!(f, "acs2er"),
            Algorithm::Acs2Her => write!(f, "acs2her"),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "acs2" => Ok(Algorithm::Acs2),
            "acs2er" => Ok(Algorithm::Acs2Er),
            "acs2her" => Ok(Algorithm::Acs2Her),
            other => Err(format!("unknown algorithm '{other}' (expected acs2|acs2er|acs2her)")),
        }
    }
}

/// All learning, replay and hindsight parameters of a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EngineParams {
    /// Learning rate.
    pub beta: f64,
    /// Discount factor.
    pub gamma: f64,
    /// Reliability threshold.
    pub theta_r: f64,
    /// Inadequacy threshold.
    pub theta_i: f64,
    /// Exploration probability during explore trials.
    pub epsilon: f64,
    /// Whether genetic generalization runs at all.
    pub do_ga: bool,
    /// GA trigger threshold on the mean time since last GA participation.
    pub theta_ga: f64,
    /// Generalizing-mutation probability per specified position.
    pub mu: f64,
    /// Crossover probability.
    pub chi: f64,
    /// Subsumer experience threshold.
    pub theta_exp: u64,
    /// Action-set size cap enforced by the GA.
    pub theta_as: u64,
    /// Replay memory capacity (N).
    pub memory_capacity: usize,
    /// Replay warm-up fill (N_warmup).
    pub warmup: usize,
    /// Mini-batch size (m).
    pub batch_size: usize,
    /// Hindsight factor (k): virtual goals per real transition.
    pub hindsight_count: usize,
    /// Virtual-goal selection strategy.
    pub strategy: GoalStrategy,
    /// Per-trial step cap; hitting it counts as failure.
    pub max_steps: usize,
    /// Sample replay batches without replacement instead of with.
    pub replay_sample_distinct: bool,
    /// Draw future virtual goals with replacement instead of without.
    pub future_goals_with_replacement: bool,
    /// Also buffer and learn from successful hindsight trials (no virtual
    /// goals); off by default.
    pub learn_on_success: bool,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams {
            beta: 0.05,
            gamma: 0.95,
            theta_r: 0.9,
            theta_i: 0.1,
            epsilon: 0.5,
            do_ga: false,
            theta_ga: 100.0,
            mu: 0.3,
            chi: 0.8,
            theta_exp: 20,
            theta_as: 20,
            memory_capacity: 10_000,
            warmup: 1000,
            batch_size: 8,
            hindsight_count: 1,
            strategy: GoalStrategy::Final,
            max_steps: 50,
            replay_sample_distinct: false,
            future_goals_with_replacement: false,
            learn_on_success: false,
        }
    }
}

impl EngineParams {
    pub(crate) fn alp(&self) -> AlpParams {
        AlpParams {
            beta: self.beta,
            theta_i: self.theta_i,
            theta_r: self.theta_r,
            theta_exp: self.theta_exp,
        }
    }

    pub(crate) fn ga(&self) -> GaParams {
        GaParams {
            theta_ga: self.theta_ga,
            mu: self.mu,
            chi: self.chi,
            theta_r: self.theta_r,
            theta_exp: self.theta_exp,
            theta_as: self.theta_as,
        }
    }

    /// Range checks shared by every front end.
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("epsilon", self.epsilon),
            ("mu", self.mu),
            ("chi", self.chi),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{name} must lie in [0,1], got {v}"));
            }
        }
        if self.theta_i >= self.theta_r {
            return Err(format!(
                "theta_i ({}) must be below theta_r ({})",
                self.theta_i, self.theta_r
            ));
        }
        if self.memory_capacity == 0 {
            return Err("replay memory capacity must be positive".into());
        }
        if self.max_steps == 0 {
            return Err("max_steps must be positive".into());
        }
        Ok(())
    }
}

/// Outcome of one trial.
#[derive(Clone, Debug)]
pub struct TrialResult {
    pub steps: usize,
    pub reached_goal: bool,
    pub total_reward: f64,
    pub elapsed: Duration,
}

fn live_action_set(
    pop: &Population,
    match_set: &[ClassifierId],
    action: usize,
) -> Vec<ClassifierId> {
    match_set
        .iter()
        .copied()
        .filter(|&id| pop.get(id).is_some_and(|cl| cl.action == action))
        .collect()
}

/// One fully online trial: deferred ALP/RL/GA on the previous action set,
/// ε-greedy selection (ε forced to 0 when `explore` is false), terminal
/// learning on the final action set. `t_global` advances by exactly the
/// number of environment steps taken.
pub fn run_acs2_trial(
    env: &mut dyn Environment,
    pop: &mut Population,
    params: &EngineParams,
    t_global: &mut u64,
    explore: bool,
    rng: &mut StdRng,
) -> TrialResult {
    let started = Instant::now();
    let epsilon = if explore { params.epsilon } else { 0.0 };
    let action_count = env.spec().action_count;
    let mut state = env.reset(rng);
    let mut pending: Option<(Vec<ClassifierId>, crate::Perception, usize, f64)> = None;
    let mut steps = 0;
    let mut total_reward = 0.0;

    loop {
        let mut match_set = pop.match_set(&state);
        if let Some((mut aset, prev_state, prev_action, prev_reward)) = pending.take() {
            alp::apply_alp(
                pop,
                &mut aset,
                &prev_state,
                prev_action,
                &state,
                *t_global,
                Some(&mut match_set),
                params.alp(),
                rng,
            );
            let max_p = rl::max_payoff(pop, &match_set);
            rl::apply_rl(pop, &aset, prev_reward, max_p, params.beta, params.gamma);
            if params.do_ga {
                ga::maybe_apply(
                    pop,
                    &mut aset,
                    Some(&mut match_set),
                    &state,
                    *t_global,
                    params.ga(),
                    rng,
                );
            }
        }

        let action = select_action(pop, &match_set, action_count, epsilon, rng);
        let mut action_set = live_action_set(pop, &match_set, action);
        let before = state.clone();
        let outcome = env.step(action, rng);
        steps += 1;
        total_reward += outcome.reward;
        state = outcome.observation;

        if outcome.done {
            alp::apply_alp(
                pop,
                &mut action_set,
                &before,
                action,
                &state,
                *t_global,
                None,
                params.alp(),
                rng,
            );
            rl::apply_rl(pop, &action_set, outcome.reward, 0.0, params.beta, params.gamma);
            if params.do_ga {
                ga::maybe_apply(pop, &mut action_set, None, &state, *t_global, params.ga(), rng);
            }
            *t_global += 1;
            break;
        }

        pending = Some((action_set, before, action, outcome.reward));
        *t_global += 1;
        if steps >= params.max_steps {
            break;
        }
    }

    TrialResult {
        steps,
        reached_goal: env.state_id() == env.goal(),
        total_reward,
        elapsed: started.elapsed(),
    }
}

/// One replay trial: act, buffer the transition, and once the memory is
/// warm run a replayed mini-batch learning step. Learning happens only
/// through the sampled batches.
pub fn run_acs2er_trial(
    env: &mut dyn Environment,
    pop: &mut Population,
    rm: &mut ReplayMemory,
    params: &EngineParams,
    t_global: &mut u64,
    explore: bool,
    rng: &mut StdRng,
) -> TrialResult {
    let started = Instant::now();
    let epsilon = if explore { params.epsilon } else { 0.0 };
    let action_count = env.spec().action_count;
    let mut state = env.reset(rng);
    let mut steps = 0;
    let mut total_reward = 0.0;

    loop {
        let match_set = pop.match_set(&state);
        let action = select_action(pop, &match_set, action_count, epsilon, rng);
        let before = state.clone();
        let outcome = env.step(action, rng);
        steps += 1;
        total_reward += outcome.reward;
        state = outcome.observation;

        rm.push(Transition::new(
            before,
            action,
            outcome.reward,
            state.clone(),
            outcome.done,
        ));
        if rm.is_ready() {
            er_learn_step(pop, rm, params.batch_size, *t_global, params, rng);
        }

        *t_global += 1;
        if outcome.done || steps >= params.max_steps {
            break;
        }
    }

    TrialResult {
        steps,
        reached_goal: env.state_id() == env.goal(),
        total_reward,
        elapsed: started.elapsed(),
    }
}

/// One hindsight trial. Phase 1 rolls out a whole episode over
/// goal-augmented perceptions with no learning at all. Phase 2 runs only
/// when the episode failed (final state differs from the goal, including
/// step-cap exits): each recorded step is buffered under the real goal and
/// under up to k virtual goals with relabeled rewards, followed by a
/// replayed learning step. Successful episodes leave population and buffer
/// untouched unless `learn_on_success` is set.
pub fn run_acs2her_trial(
    env: &mut dyn Environment,
    pop: &mut Population,
    rm: &mut ReplayMemory,
    params: &EngineParams,
    t_global: &mut u64,
    explore: bool,
    rng: &mut StdRng,
) -> TrialResult {
    let started = Instant::now();
    let epsilon = if explore { params.epsilon } else { 0.0 };
    let action_count = env.spec().action_count;
    let goal = env.goal();
    let goal_segment = env.encode_goal(goal);
    let goal_reward = env.spec().goal_reward;

    let mut state = env.reset(rng);
    let mut state_id = env.state_id();
    let mut trajectory: Vec<TrajectoryStep> = Vec::new();
    let mut steps = 0;
    let mut total_reward = 0.0;

    loop {
        let augmented = augment(&state, &goal_segment);
        let match_set = pop.match_set(&augmented);
        let action = select_action(pop, &match_set, action_count, epsilon, rng);
        let outcome = env.step(action, rng);
        let next_id = env.state_id();
        steps += 1;
        total_reward += outcome.reward;
        trajectory.push(TrajectoryStep {
            state: state.clone(),
            state_id,
            action,
            reward: outcome.reward,
            next_state: outcome.observation.clone(),
            next_state_id: next_id,
            done: outcome.done,
        });
        state = outcome.observation;
        state_id = next_id;
        *t_global += 1;
        if outcome.done || steps >= params.max_steps {
            break;
        }
    }

    let reached_goal = state_id == goal;
    if !reached_goal {
        for index in 0..trajectory.len() {
            let step = &trajectory[index];
            rm.push(Transition::new(
                augment(&step.state, &goal_segment),
                step.action,
                step.reward,
                augment(&step.next_state, &goal_segment),
                step.done,
            ));
            let virtual_goals = additional_goals(
                params.strategy,
                params.hindsight_count,
                &trajectory,
                index,
                params.future_goals_with_replacement,
                rng,
            );
            for vg in virtual_goals {
                let segment = env.encode_goal(vg);
                let relabeled = hindsight_reward(step.next_state_id, vg, goal_reward);
                rm.push(Transition::new(
                    augment(&step.state, &segment),
                    step.action,
                    relabeled,
                    augment(&step.next_state, &segment),
                    false,
                ));
            }
            if rm.is_ready() {
                er_learn_step(pop, rm, params.batch_size, *t_global, params, rng);
            }
        }
    } else if params.learn_on_success {
        for step in &trajectory {
            rm.push(Transition::new(
                augment(&step.state, &goal_segment),
                step.action,
                step.reward,
                augment(&step.next_state, &goal_segment),
                step.done,
            ));
            if rm.is_ready() {
                er_learn_step(pop, rm, params.batch_size, *t_global, params, rng);
            }
        }
    }

    TrialResult {
        steps,
        reached_goal,
        total_reward,
        elapsed: started.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Classifier;
    use crate::env::Corridor;
    use crate::perception::{Condition, Effect};
    use rand::SeedableRng;

    fn params() -> EngineParams {
        EngineParams::default()
    }

    #[test]
    fn default_parameters_validate() {
        assert!(params().validate().is_ok());
        let mut bad = params();
        bad.epsilon = 1.5;
        assert!(bad.validate().is_err());
        let mut inverted = params();
        inverted.theta_i = 0.95;
        assert!(inverted.validate().is_err());
    }

    #[test]
    fn adjacent_goal_is_reached_in_one_step_after_training() {
        let mut env = Corridor::new(2); // single non-goal cell
        let mut pop = Population::new();
        let mut rng = StdRng::seed_from_u64(1);
        let mut t = 0;
        for _ in 0..50 {
            run_acs2_trial(&mut env, &mut pop, &params(), &mut t, true, &mut rng);
        }
        let result = run_acs2_trial(&mut env, &mut pop, &params(), &mut t, false, &mut rng);
        assert_eq!(result.steps, 1);
        assert!(result.reached_goal);
        assert_eq!(result.total_reward, 1000.0);
    }

    #[test]
    fn online_trial_advances_global_time_by_steps_taken() {
        let mut env = Corridor::new(4);
        let mut pop = Population::new();
        let mut rng = StdRng::seed_from_u64(2);
        let mut t = 0;
        for _ in 0..10 {
            let before = t;
            let result = run_acs2_trial(&mut env, &mut pop, &params(), &mut t, true, &mut rng);
            assert_eq!(t - before, result.steps as u64);
            assert!(result.steps >= 1);
        }
    }

    #[test]
    fn replay_engine_does_not_learn_before_warmup() {
        let mut env = Corridor::new(4);
        let mut pop = Population::new();
        let mut rm = ReplayMemory::new(10_000, 1000);
        let mut rng = StdRng::seed_from_u64(3);
        let mut t = 0;
        let empty = pop.fingerprint();
        for _ in 0..5 {
            run_acs2er_trial(&mut env, &mut pop, &mut rm, &params(), &mut t, true, &mut rng);
        }
        assert!(rm.len() < 1000);
        assert_eq!(pop.fingerprint(), empty);
        assert_eq!(pop.len(), 0);
    }

    #[test]
    fn replay_engine_learns_once_warm() {
        let mut env = Corridor::new(4);
        let mut pop = Population::new();
        let mut p = params();
        p.warmup = 5;
        p.batch_size = 4;
        let mut rm = ReplayMemory::new(100, p.warmup);
        let mut rng = StdRng::seed_from_u64(4);
        let mut t = 0;
        for _ in 0..20 {
            run_acs2er_trial(&mut env, &mut pop, &mut rm, &p, &mut t, true, &mut rng);
        }
        assert!(pop.len() > 0);
        // all buffered transitions are un-augmented
        for tr in rm.iter() {
            assert_eq!(tr.state.len(), 1);
        }
    }

    /// Seeds a corridor policy over goal-augmented perceptions that always
    /// walks in the given direction with high fitness.
    fn seed_her_policy(pop: &mut Population, len: usize, goal_digit: u8, action: usize) {
        for cell in 0..len {
            let digit = b"0123456789abcdef"[cell];
            let mut cl = Classifier::new(
                Condition::from_str(&format!("{}{}", digit as char, goal_digit as char)),
                action,
                Effect::passthrough(2),
                0,
            );
            cl.q = 1.0;
            cl.r = 100.0;
            pop.insert(cl);
        }
    }

    #[test]
    fn successful_hindsight_trial_changes_nothing() {
        let mut env = Corridor::new(3);
        let mut pop = Population::new();
        seed_her_policy(&mut pop, 3, b'2', 1); // always step right -> success
        let mut rm = ReplayMemory::new(100, 0);
        let mut rng = StdRng::seed_from_u64(5);
        let mut t = 0;
        let fingerprint = pop.fingerprint();
        let result = run_acs2her_trial(&mut env, &mut pop, &mut rm, &params(), &mut t, false, &mut rng);
        assert!(result.reached_goal);
        assert_eq!(pop.fingerprint(), fingerprint);
        assert_eq!(rm.len(), 0);
        assert_eq!(t, result.steps as u64);
    }

    #[test]
    fn failed_hindsight_trial_buffers_real_and_virtual_transitions() {
        let mut env = Corridor::new(2);
        let mut pop = Population::new();
        seed_her_policy(&mut pop, 2, b'1', 0); // always step left -> stuck at cell 0
        let mut p = params();
        p.max_steps = 10;
        p.hindsight_count = 2;
        p.strategy = GoalStrategy::Future;
        p.warmup = 10_000; // never learn, just count buffered entries
        let mut rm = ReplayMemory::new(10_000, p.warmup);
        let mut rng = StdRng::seed_from_u64(6);
        let mut t = 0;
        let fingerprint = pop.fingerprint();
        let result = run_acs2her_trial(&mut env, &mut pop, &mut rm, &p, &mut t, false, &mut rng);
        assert!(!result.reached_goal);
        assert_eq!(result.steps, 10);
        // 10 real + min(k, remaining) virtual per step: 9*2 + 1 = 19
        assert_eq!(rm.len(), 10 + 19);
        assert_eq!(pop.fingerprint(), fingerprint); // below warm-up
        // the trajectory never terminates, so real and virtual transitions
        // alike carry done = false and augmented perceptions
        for tr in rm.iter() {
            assert_eq!(tr.state.len(), 2);
            assert!(!tr.done);
        }
        // every step's outcome is cell 0 and so is every virtual goal:
        // all 19 virtual transitions pay 1000, the 10 real ones pay 0
        let paid = rm.iter().filter(|tr| tr.reward == 1000.0).count();
        let unpaid = rm.iter().filter(|tr| tr.reward == 0.0).count();
        assert_eq!(paid, 19);
        assert_eq!(unpaid, 10);
    }

    #[test]
    fn her_transitions_are_augmented_and_er_transitions_are_not() {
        let mut env = Corridor::new(4);
        let mut pop = Population::new();
        let mut p = params();
        p.warmup = 4;
        p.batch_size = 2;
        let mut rm_er = ReplayMemory::new(100, p.warmup);
        let mut rm_her = ReplayMemory::new(100, p.warmup);
        let mut rng = StdRng::seed_from_u64(7);
        let mut t = 0;
        run_acs2er_trial(&mut env, &mut pop, &mut rm_er, &p, &mut t, true, &mut rng);
        let mut pop2 = Population::new();
        run_acs2her_trial(&mut env, &mut pop2, &mut rm_her, &p, &mut t, true, &mut rng);
        for tr in rm_er.iter() {
            assert_eq!(tr.state.len(), 1);
            assert_eq!(tr.next_state.len(), 1);
        }
        for tr in rm_her.iter() {
            assert_eq!(tr.state.len(), 2);
            assert_eq!(tr.next_state.len(), 2);
        }
    }

    #[test]
    fn identical_seeds_give_identical_runs() {
        let run = |seed: u64| {
            let mut env = Corridor::new(4);
            let mut pop = Population::new();
            let mut p = params();
            p.warmup = 5;
            let mut rm = ReplayMemory::new(100, p.warmup);
            let mut rng = StdRng::seed_from_u64(seed);
            let mut t = 0;
            let mut steps = Vec::new();
            for _ in 0..30 {
                let r = run_acs2er_trial(&mut env, &mut pop, &mut rm, &p, &mut t, true, &mut rng);
                steps.push(r.steps);
            }
            (pop.fingerprint(), steps, t)
        };
        assert_eq!(run(11), run(11));
        assert_ne!(run(11).0, run(12).0);
    }
}
