//! Benchmarks for the three costs that dominate a run: match-set
//! formation, one replayed learning step, and a whole online maze trial.

use alcs::engine::{run_acs2_trial, EngineParams};
use alcs::env::maze6;
use alcs::perception::{Condition, Effect, Perception};
use alcs::population::Population;
use alcs::replay::{er_learn_step, ReplayMemory, Transition};
use alcs::Classifier;
use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ALPHABET: &[u8] = b"019";

fn random_condition(rng: &mut StdRng, len: usize) -> Condition {
    let mut c = Condition::generic(len);
    for i in 0..len {
        if rng.gen_bool(0.4) {
            c.set(i, ALPHABET[rng.gen_range(0..ALPHABET.len())]);
        }
    }
    c
}

fn synthetic_population(rng: &mut StdRng, size: usize, len: usize) -> Population {
    let mut pop = Population::new();
    while pop.len() < size {
        let condition = random_condition(rng, len);
        let mut effect = Effect::passthrough(len);
        if rng.gen_bool(0.7) {
            let i = rng.gen_range(0..len);
            effect.set(i, ALPHABET[rng.gen_range(0..ALPHABET.len())]);
        }
        let mut cl = Classifier::new(condition, rng.gen_range(0..8), effect, 0);
        cl.q = rng.gen_range(0.1..1.0);
        cl.r = rng.gen_range(0.0..1000.0);
        pop.insert(cl);
    }
    pop
}

fn bench_match_set(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(7);
    let mut group = c.benchmark_group("match_set");
    for size in [500, 4000] {
        let pop = synthetic_population(&mut rng, size, 10);
        let p = Perception::from_str("0110011071");
        group.bench_function(format!("pop{size}"), |b| {
            b.iter(|| black_box(pop.match_set(black_box(&p))).len())
        });
    }
    group.finish();
}

fn bench_replay_step(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(11);
    let params = EngineParams::default();
    let mut pop = synthetic_population(&mut rng, 1000, 8);
    let mut rm = ReplayMemory::new(10_000, 0);
    let states: Vec<Perception> = (0..64)
        .map(|_| {
            Perception::new(
                (0..8)
                    .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
                    .collect(),
            )
        })
        .collect();
    for _ in 0..5000 {
        let s = states[rng.gen_range(0..states.len())].clone();
        let s2 = states[rng.gen_range(0..states.len())].clone();
        rm.push(Transition::new(s, rng.gen_range(0..8), 0.0, s2, false));
    }
    c.bench_function("er_learn_step_m8", |b| {
        b.iter(|| er_learn_step(&mut pop, &rm, 8, 100, &params, &mut rng))
    });
}

fn bench_maze_trial(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(13);
    let mut env = maze6();
    let mut pop = Population::new();
    let params = EngineParams::default();
    let mut t = 0u64;
    // warm the population first so the benchmark sees steady-state costs
    for _ in 0..500 {
        run_acs2_trial(&mut env, &mut pop, &params, &mut t, true, &mut rng);
    }
    c.bench_function("acs2_maze_trial", |b| {
        b.iter(|| run_acs2_trial(&mut env, &mut pop, &params, &mut t, true, &mut rng))
    });
}

criterion_group!(benches, bench_match_set, bench_replay_step, bench_maze_trial);
criterion_main!(benches);
