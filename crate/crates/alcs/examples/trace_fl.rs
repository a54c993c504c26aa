//! Scratch trace: lake runs, success counts by phase.

use alcs::engine::Algorithm;
use alcs::harness::{run_experiment, EnvKind, ExperimentConfig};

fn main() {
    let repeats: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    for (algo, m, k) in [
        (Algorithm::Acs2, None, None),
        (Algorithm::Acs2Er, Some(10), None),
        (Algorithm::Acs2Her, Some(10), Some(1)),
    ] {
        let mut cfg = ExperimentConfig::new(algo, EnvKind::FrozenLake);
        cfg.repeats = repeats;
        cfg.batch_size = m;
        cfg.hindsight_count = k;
        cfg.seed = 42;
        let started = std::time::Instant::now();
        let outcome = run_experiment(&cfg).unwrap();
        let s = &outcome.summary;
        println!(
            "{}: successes explore/exploit = {:.2}/{:.2} steps={:.2}/{:.2} num avg={:.0} rel avg={:.0} wall={:.0}s",
            s.label,
            s.explore_successes_mean,
            s.exploit_successes_mean.unwrap_or(f64::NAN),
            s.explore_steps_mean,
            s.exploit_steps_mean.unwrap_or(f64::NAN),
            s.avg_numerosity.unwrap_or(f64::NAN),
            s.avg_reliable.unwrap_or(f64::NAN),
            started.elapsed().as_secs_f64()
        );
    }
}
