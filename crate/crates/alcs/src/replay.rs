//! Bounded FIFO replay memory with warm-up gating and the replayed
//! learning step.

use crate::engine::EngineParams;
use crate::perception::Perception;
use crate::population::Population;
use crate::{alp, ga, rl};
use rand::Rng;
use std::collections::VecDeque;
use std::io::{self, Write};

/// One stored experience. In hindsight mode both perceptions are
/// goal-augmented; either way they always share one length.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub state: Perception,
    pub action: usize,
    pub reward: f64,
    pub next_state: Perception,
    pub done: bool,
}

impl Transition {
    pub fn new(
        state: Perception,
        action: usize,
        reward: f64,
        next_state: Perception,
        done: bool,
    ) -> Self {
        assert_eq!(state.len(), next_state.len(), "transition endpoints differ in length");
        Transition { state, action, reward, next_state, done }
    }
}

/// FIFO buffer of transitions, capped at `capacity`; learning from it is
/// gated until `warmup` transitions have been collected.
#[derive(Clone, Debug)]
pub struct ReplayMemory {
    buffer: VecDeque<Transition>,
    capacity: usize,
    warmup: usize,
}

impl ReplayMemory {
    pub fn new(capacity: usize, warmup: usize) -> Self {
        assert!(capacity > 0, "replay memory needs a positive capacity");
        ReplayMemory {
            buffer: VecDeque::with_capacity(capacity.min(1 << 16)),
            capacity,
            warmup,
        }
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Appends a transition, evicting the oldest entry first when full.
    pub fn push(&mut self, tr: Transition) {
        if self.buffer.len() >= self.capacity {
            self.buffer.pop_front();
        }
        self.buffer.push_back(tr);
    }

    /// True once the warm-up fill has been reached.
    pub fn is_ready(&self) -> bool {
        self.buffer.len() >= self.warmup
    }

    pub fn iter(&self) -> impl Iterator<Item = &Transition> {
        self.buffer.iter()
    }

    /// Draws `m` transitions uniformly, with replacement by default or
    /// without when `distinct` is set (then capped at the buffer size).
    /// Sampling before warm-up violates the buffer contract.
    pub fn sample(&self, m: usize, distinct: bool, rng: &mut impl Rng) -> Vec<&Transition> {
        assert!(self.is_ready(), "sampled replay memory before warm-up");
        if self.buffer.is_empty() {
            return Vec::new();
        }
        if distinct {
            let take = m.min(self.buffer.len());
            rand::seq::index::sample(rng, self.buffer.len(), take)
                .into_iter()
                .map(|i| &self.buffer[i])
                .collect()
        } else {
            (0..m)
                .map(|_| &self.buffer[rng.gen_range(0..self.buffer.len())])
                .collect()
        }
    }

    /// Debug dump: one transition per line, tab-separated fields, raw
    /// symbol strings for the perceptions.
    pub fn dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        for tr in &self.buffer {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}",
                tr.state, tr.action, tr.reward, tr.next_state, tr.done
            )?;
        }
        Ok(())
    }
}

/// Processes one transition exactly as the online loop would: rebuild the
/// action set for (state, action) and the match set for the next state,
/// then run ALP, RL (with the terminal bootstrap cut) and, when enabled,
/// the GA.
pub(crate) fn learn_from_transition(
    pop: &mut Population,
    tr: &Transition,
    time: u64,
    params: &EngineParams,
    rng: &mut impl Rng,
) {
    let mut action_set = pop.action_set(&tr.state, tr.action);
    let mut next_match_set = pop.match_set(&tr.next_state);
    alp::apply_alp(
        pop,
        &mut action_set,
        &tr.state,
        tr.action,
        &tr.next_state,
        time,
        Some(&mut next_match_set),
        params.alp(),
        rng,
    );
    let max_p = if tr.done {
        0.0
    } else {
        rl::max_payoff(pop, &next_match_set)
    };
    rl::apply_rl(pop, &action_set, tr.reward, max_p, params.beta, params.gamma);
    if params.do_ga {
        ga::maybe_apply(
            pop,
            &mut action_set,
            Some(&mut next_match_set),
            &tr.next_state,
            time,
            params.ga(),
            rng,
        );
    }
}

/// One replayed learning step: draws a batch of `m` transitions and runs
/// the full learning cycle on each. The replay memory itself is never
/// mutated.
pub fn er_learn_step(
    pop: &mut Population,
    rm: &ReplayMemory,
    m: usize,
    time: u64,
    params: &EngineParams,
    rng: &mut impl Rng,
) {
    assert!(rm.is_ready(), "replay learning before warm-up");
    if m == 0 {
        return;
    }
    let batch: Vec<Transition> = rm
        .sample(m, params.replay_sample_distinct, rng)
        .into_iter()
        .cloned()
        .collect();
    for tr in &batch {
        learn_from_transition(pop, tr, time, params, rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn tr(tag: &str) -> Transition {
        Transition::new(
            Perception::from_str(tag),
            0,
            0.0,
            Perception::from_str(tag),
            false,
        )
    }

    #[test]
    fn fifo_evicts_the_oldest_entry() {
        let mut rm = ReplayMemory::new(3, 0);
        for tag in ["1", "2", "3", "4"] {
            rm.push(tr(tag));
        }
        let kept: Vec<String> = rm.iter().map(|t| t.state.to_string()).collect();
        assert_eq!(kept, ["2", "3", "4"]);
        assert_eq!(rm.len(), 3);
    }

    #[test]
    fn push_into_empty_buffer_has_size_one() {
        let mut rm = ReplayMemory::new(10, 0);
        rm.push(tr("1"));
        assert_eq!(rm.len(), 1);
    }

    #[test]
    fn warmup_boundary_is_inclusive() {
        let mut rm = ReplayMemory::new(10_000, 1000);
        for i in 0..999 {
            rm.push(tr(&format!("{}", i % 10)));
        }
        assert!(!rm.is_ready());
        rm.push(tr("9"));
        assert_eq!(rm.len(), 1000);
        assert!(rm.is_ready());
    }

    #[test]
    fn zero_warmup_is_always_ready() {
        let rm = ReplayMemory::new(4, 0);
        assert!(rm.is_ready());
    }

    #[test]
    fn sampling_a_singleton_buffer_returns_it() {
        let mut rm = ReplayMemory::new(4, 0);
        rm.push(tr("7"));
        let mut rng = StdRng::seed_from_u64(0);
        let batch = rm.sample(1, false, &mut rng);
        assert_eq!(batch.len(), 1);
        assert_eq!(batch[0].state.to_string(), "7");
    }

    #[test]
    #[should_panic(expected = "before warm-up")]
    fn sampling_before_warmup_is_a_contract_violation() {
        let rm = ReplayMemory::new(10, 5);
        let mut rng = StdRng::seed_from_u64(0);
        rm.sample(1, false, &mut rng);
    }

    // Uniformity: each of 10 entries drawn ~10000 times out of 1e5, within
    // 3 sigma of the multinomial expectation (sigma = sqrt(n*p*(1-p))).
    #[test]
    fn sampling_is_uniform_within_three_sigma() {
        let mut rm = ReplayMemory::new(10, 0);
        for i in 0..10 {
            rm.push(tr(&i.to_string()));
        }
        let mut rng = StdRng::seed_from_u64(42);
        let mut counts = [0usize; 10];
        let n = 100_000;
        for t in rm.sample(n, false, &mut rng) {
            counts[t.state.to_string().parse::<usize>().unwrap()] += 1;
        }
        let expected = n as f64 / 10.0;
        let sigma = (n as f64 * 0.1 * 0.9).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - expected).abs() <= 3.0 * sigma,
                "entry {i} drawn {c} times, expected {expected} +- {}",
                3.0 * sigma
            );
        }
    }

    #[test]
    fn capacity_law_holds_under_random_push_sequences() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let cap: usize = rng.gen_range(1..20);
            let mut rm = ReplayMemory::new(cap, 0);
            let pushes: usize = rng.gen_range(0..100);
            for i in 0..pushes {
                rm.push(tr(&(i % 10).to_string()));
                assert!(rm.len() <= cap);
            }
            // eviction order equals insertion order
            let kept: Vec<String> = rm.iter().map(|t| t.state.to_string()).collect();
            let expected: Vec<String> = (pushes.saturating_sub(cap)..pushes)
                .map(|i| (i % 10).to_string())
                .collect();
            assert_eq!(kept, expected);
        }
    }

    #[test]
    fn dump_is_tab_separated_lines() {
        let mut rm = ReplayMemory::new(4, 0);
        rm.push(Transition::new(
            Perception::from_str("01"),
            3,
            1000.0,
            Perception::from_str("11"),
            true,
        ));
        let mut out = Vec::new();
        rm.dump(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "01\t3\t1000\t11\ttrue\n");
    }
}
