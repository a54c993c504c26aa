//! Scratch trace: ACS2ER maze run with per-block diagnostics.

use alcs::engine::{run_acs2er_trial, run_acs2her_trial, EngineParams};
use alcs::env::{maze6, Environment};
use alcs::harness::knowledge;
use alcs::population::Population;
use alcs::replay::ReplayMemory;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let trials: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let her = std::env::args().nth(2).as_deref() == Some("her");
    let mut env = maze6();
    let mut pop = Population::new();
    let mut params = EngineParams::default();
    params.batch_size = 8;
    if her {
        params.hindsight_count = 2;
        params.strategy = alcs::hindsight::GoalStrategy::Future;
    }
    let mut rm = ReplayMemory::new(params.memory_capacity, params.warmup);
    let mut rng = StdRng::seed_from_u64(42);
    let mut t = 0u64;
    let started = std::time::Instant::now();
    let mut steps_block = 0usize;
    let mut successes = 0usize;
    let oracle = env.enumerate_transitions().unwrap();
    let goal_segment = her.then(|| env.encode_goal(env.goal()));
    for trial in 1..=trials {
        let r = if her {
            run_acs2her_trial(&mut env, &mut pop, &mut rm, &params, &mut t, true, &mut rng)
        } else {
            run_acs2er_trial(&mut env, &mut pop, &mut rm, &params, &mut t, true, &mut rng)
        };
        steps_block += r.steps;
        successes += r.reached_goal as usize;
        if trial % 20 == 0 {
            eprintln!(
                "trial {trial}: macro={} num={} reliable={} rm={} know={:.2}% steps(avg20)={:.1} succ={} elapsed={:.2}s",
                pop.len(),
                pop.total_numerosity(),
                pop.reliable_count(0.9),
                rm.len(),
                knowledge(&pop, &oracle, 0.9, goal_segment.as_ref()),
                steps_block as f64 / 20.0,
                successes,
                started.elapsed().as_secs_f64()
            );
            steps_block = 0;
        }
    }
}
