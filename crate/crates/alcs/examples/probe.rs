//! Scratch probe: small-scale end-to-end runs printing the headline
//! metrics for each engine on the maze.

use alcs::engine::Algorithm;
use alcs::env::{maze6, Environment};
use alcs::harness::{run_experiment, EnvKind, ExperimentConfig};
use std::collections::VecDeque;

fn optimal_mean_steps() {
    // BFS distances from the goal over the 8-direction moves.
    let env = maze6();
    let map = env.map();
    let goal = env.goal();
    let mut dist = vec![usize::MAX; 81];
    dist[goal.0] = 0;
    let mut queue = VecDeque::from([goal]);
    let moves: [(i32, i32); 8] = [
        (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1),
    ];
    while let Some(cell) = queue.pop_front() {
        let (x, y) = map.coords(cell);
        for (dx, dy) in moves {
            let nx = x as i32 + dx;
            let ny = y as i32 + dy;
            if !(0..9).contains(&nx) || !(0..9).contains(&ny) {
                continue;
            }
            let nid = map.index(nx as usize, ny as usize);
            if map.cell_at(nid) != alcs::env::Cell::Wall && dist[nid.0] == usize::MAX {
                dist[nid.0] = dist[cell.0] + 1;
                queue.push_back(nid);
            }
        }
    }
    let walkable = map.walkable_cells();
    let total: usize = walkable.iter().map(|c| dist[c.0]).sum();
    println!(
        "optimal mean steps from random start: {:.3} over {} cells (max {})",
        total as f64 / walkable.len() as f64,
        walkable.len(),
        walkable.iter().map(|c| dist[c.0]).max().unwrap()
    );
}

fn main() {
    optimal_mean_steps();

    let args: Vec<String> = std::env::args().collect();
    let repeats: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let explore: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let exploit: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(500);

    for (algo, m, k) in [
        (Algorithm::Acs2, None, None),
        (Algorithm::Acs2Er, Some(8), None),
        (Algorithm::Acs2Her, Some(8), Some(2)),
    ] {
        let mut cfg = ExperimentConfig::new(algo, EnvKind::Maze6);
        cfg.repeats = repeats;
        cfg.explore_trials = explore;
        cfg.exploit_trials = exploit;
        cfg.batch_size = m;
        cfg.hindsight_count = k;
        cfg.seed = 42;
        let started = std::time::Instant::now();
        let outcome = run_experiment(&cfg).unwrap();
        let s = &outcome.summary;
        println!(
            "{}: best_knowledge={:?} trial95={:?} max_num={:?} avg_num={:?} avg_rel={:?} diff={:?} \
             steps explore/exploit={:.2}/{:?} successes={:.1}/{:?} wall={:.1}s",
            s.label,
            s.best_knowledge_pct.map(|v| (v * 100.0).round() / 100.0),
            s.trial_at_threshold,
            s.max_numerosity.map(|v| v.round()),
            s.avg_numerosity.map(|v| v.round()),
            s.avg_reliable.map(|v| v.round()),
            s.difference.map(|v| v.round()),
            s.explore_steps_mean,
            s.exploit_steps_mean.map(|v| (v * 100.0).round() / 100.0),
            s.explore_successes_mean,
            s.exploit_successes_mean,
            started.elapsed().as_secs_f64()
        );
    }
}
