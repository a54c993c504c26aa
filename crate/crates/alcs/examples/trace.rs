//! Scratch trace: one ACS2 maze run with per-block diagnostics.

use alcs::engine::{run_acs2_trial, EngineParams};
use alcs::env::{maze6, Environment};
use alcs::harness::knowledge;
use alcs::population::Population;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let explore: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2000);
    let exploit: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(500);
    let mut env = maze6();
    let mut pop = Population::new();
    let params = EngineParams::default();
    let mut rng = StdRng::seed_from_u64(42);
    let mut t = 0u64;
    let started = std::time::Instant::now();
    let mut steps_block = 0usize;
    let oracle = env.enumerate_transitions().unwrap();
    let block = 100;
    for trial in 1..=explore + exploit {
        let r = run_acs2_trial(&mut env, &mut pop, &params, &mut t, trial <= explore, &mut rng);
        steps_block += r.steps;
        if trial % block == 0 {
            let moves: Vec<_> = oracle
                .iter()
                .filter(|t| t.state_id != t.next_state_id)
                .cloned()
                .collect();
            let bumps: Vec<_> = oracle
                .iter()
                .filter(|t| t.state_id == t.next_state_id)
                .cloned()
                .collect();
            eprintln!(
                "trial {trial}: macro={} num={} reliable={} know={:.2}% moves({})={:.2}% bumps({})={:.2}% steps(avg)={:.1} elapsed={:.2}s",
                pop.len(),
                pop.total_numerosity(),
                pop.reliable_count(0.9),
                knowledge(&pop, &oracle, 0.9, None),
                moves.len(),
                knowledge(&pop, &moves, 0.9, None),
                bumps.len(),
                knowledge(&pop, &bumps, 0.9, None),
                steps_block as f64 / block as f64,
                started.elapsed().as_secs_f64()
            );
            steps_block = 0;
        }
    }
}
