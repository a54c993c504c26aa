//! Genetic generalization of action sets: quality-proportionate parent
//! selection, single-point crossover, generalizing mutation, insertion
//! with numerosity-merging subsumption and action-set capacity control.
//!
//! Disabled by default in the engines; the trigger compares the
//! numerosity-weighted mean GA timestamp of the action set against
//! `theta_ga`.

use crate::classifier::Classifier;
use crate::perception::{Perception, WILDCARD};
use crate::population::{ClassifierId, Population};
use rand::Rng;

/// Threshold slice of the engine parameters used by the GA.
#[derive(Clone, Copy, Debug)]
pub struct GaParams {
    pub theta_ga: f64,
    pub mu: f64,
    pub chi: f64,
    pub theta_r: f64,
    pub theta_exp: u64,
    pub theta_as: u64,
}

/// True iff the GA is due for this action set at global time `time`:
/// `time - sum(num*tga)/sum(num) > theta_ga`.
pub fn should_fire(
    pop: &Population,
    action_set: &[ClassifierId],
    time: u64,
    theta_ga: f64,
) -> bool {
    let mut num_sum = 0u64;
    let mut weighted = 0.0f64;
    for &id in action_set {
        if let Some(cl) = pop.get(id) {
            num_sum += cl.num as u64;
            weighted += cl.num as f64 * cl.tga as f64;
        }
    }
    if num_sum == 0 {
        return false;
    }
    time as f64 - weighted / num_sum as f64 > theta_ga
}

/// Runs the GA when the trigger is due; otherwise a no-op.
#[allow(clippy::too_many_arguments)]
pub fn maybe_apply(
    pop: &mut Population,
    action_set: &mut Vec<ClassifierId>,
    next_match_set: Option<&mut Vec<ClassifierId>>,
    next_p: &Perception,
    time: u64,
    params: GaParams,
    rng: &mut impl Rng,
) {
    if should_fire(pop, action_set, time, params.theta_ga) {
        apply_ga(pop, action_set, next_match_set, next_p, time, params, rng);
    }
}

/// One GA invocation: two parents chosen with probability proportional to
/// q², offspring mutated and possibly crossed over, capacity enforced, then
/// inserted with GA subsumption (numerosity merge). A no-op when the action
/// set holds fewer than two distinct classifiers.
#[allow(clippy::too_many_arguments)]
pub fn apply_ga(
    pop: &mut Population,
    action_set: &mut Vec<ClassifierId>,
    mut next_match_set: Option<&mut Vec<ClassifierId>>,
    next_p: &Perception,
    time: u64,
    params: GaParams,
    rng: &mut impl Rng,
) {
    let live: Vec<ClassifierId> = action_set
        .iter()
        .copied()
        .filter(|&id| pop.get(id).is_some())
        .collect();
    if live.len() < 2 {
        return;
    }
    for &id in &live {
        pop.get_mut(id).unwrap().tga = time;
    }

    let first = select_parent(pop, &live, rng);
    let second = select_parent(pop, &live, rng);
    let parent1 = pop.get(first).unwrap().clone();
    let parent2 = pop.get(second).unwrap().clone();

    let mut child1 = offspring_of(&parent1, time);
    let mut child2 = offspring_of(&parent2, time);
    mutate(&mut child1, params.mu, rng);
    mutate(&mut child2, params.mu, rng);
    if rng.gen::<f64>() < params.chi {
        crossover(&mut child1, &mut child2, rng);
        let mean_q = (parent1.q + parent2.q) / 2.0;
        child1.q = mean_q;
        child2.q = mean_q;
    }
    child1.q /= 2.0;
    child2.q /= 2.0;
    let mean_r = (parent1.r + parent2.r) / 2.0;
    let mean_ir = (parent1.ir + parent2.ir) / 2.0;
    for child in [&mut child1, &mut child2] {
        child.r = mean_r;
        child.ir = mean_ir;
    }

    delete_excess(pop, action_set, 2, params.theta_as, rng);
    for child in [child1, child2] {
        if child.condition.is_generic() {
            continue; // a fully generalized condition carries no information
        }
        insert_offspring(
            pop,
            action_set,
            next_match_set.as_deref_mut(),
            next_p,
            child,
            params,
        );
    }
}

fn offspring_of(parent: &Classifier, time: u64) -> Classifier {
    let mut child = Classifier::new(
        parent.condition.clone(),
        parent.action,
        parent.effect.clone(),
        time,
    );
    child.q = parent.q;
    child.aav = parent.aav;
    child
}

/// Roulette-wheel selection with weight q².
fn select_parent(
    pop: &Population,
    live: &[ClassifierId],
    rng: &mut impl Rng,
) -> ClassifierId {
    let weights: Vec<f64> = live
        .iter()
        .map(|&id| {
            let q = pop.get(id).unwrap().q;
            q * q
        })
        .collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return live[rng.gen_range(0..live.len())];
    }
    let mut spin = rng.gen::<f64>() * total;
    for (&id, &w) in live.iter().zip(weights.iter()) {
        spin -= w;
        if spin <= 0.0 {
            return id;
        }
    }
    *live.last().unwrap()
}

/// Generalizing mutation: each specified condition position reverts to the
/// wildcard with probability `mu`.
fn mutate(child: &mut Classifier, mu: f64, rng: &mut impl Rng) {
    for i in 0..child.condition.len() {
        if child.condition.at(i) != WILDCARD && rng.gen::<f64>() < mu {
            child.condition.set(i, WILDCARD);
        }
    }
}

/// Single-point crossover of the two condition strings.
fn crossover(a: &mut Classifier, b: &mut Classifier, rng: &mut impl Rng) {
    let len = a.condition.len();
    if len < 2 {
        return;
    }
    let point = rng.gen_range(1..len);
    for i in point..len {
        let (sa, sb) = (a.condition.at(i), b.condition.at(i));
        a.condition.set(i, sb);
        b.condition.set(i, sa);
    }
}

/// Removes micro-classifiers until the action set fits `theta_as` with
/// `incoming` insertions pending, using a tournament of three biased toward
/// the lowest quality.
fn delete_excess(
    pop: &mut Population,
    action_set: &mut Vec<ClassifierId>,
    incoming: u64,
    theta_as: u64,
    rng: &mut impl Rng,
) {
    loop {
        let live: Vec<ClassifierId> = action_set
            .iter()
            .copied()
            .filter(|&id| pop.get(id).is_some())
            .collect();
        let total: u64 = live
            .iter()
            .map(|&id| pop.get(id).unwrap().num as u64)
            .sum();
        if live.is_empty() || total + incoming <= theta_as {
            return;
        }
        let mut victim = live[rng.gen_range(0..live.len())];
        for _ in 0..2 {
            let challenger = live[rng.gen_range(0..live.len())];
            if pop.get(challenger).unwrap().q < pop.get(victim).unwrap().q {
                victim = challenger;
            }
        }
        let cl = pop.get_mut(victim).unwrap();
        if cl.num > 1 {
            cl.num -= 1;
        } else {
            pop.remove(victim);
            action_set.retain(|&x| x != victim);
        }
    }
}

fn same_structure(a: &Classifier, b: &Classifier) -> bool {
    a.condition == b.condition && a.action == b.action && a.effect == b.effect
}

/// GA insertion: a subsuming or identical rule in the action set absorbs
/// the child by incrementing its numerosity.
fn insert_offspring(
    pop: &mut Population,
    action_set: &mut Vec<ClassifierId>,
    next_match_set: Option<&mut Vec<ClassifierId>>,
    next_p: &Perception,
    child: Classifier,
    params: GaParams,
) {
    let mut old: Option<(ClassifierId, usize)> = None;
    for &id in action_set.iter() {
        let Some(cl) = pop.get(id) else { continue };
        if cl.subsumes(&child, params.theta_r, params.theta_exp) {
            let spec = cl.condition.specificity();
            if old.map_or(true, |(_, best)| spec < best) {
                old = Some((id, spec));
            }
        }
    }
    if old.is_none() {
        old = action_set
            .iter()
            .find(|&&id| pop.get(id).is_some_and(|cl| same_structure(cl, &child)))
            .map(|&id| (id, 0));
    }
    match old {
        Some((id, _)) => pop.get_mut(id).unwrap().num += 1,
        None => {
            let matches_next = child.matches(next_p);
            let id = pop.insert(child);
            if !action_set.contains(&id) {
                action_set.push(id);
            }
            if let Some(mset) = next_match_set {
                if matches_next && !mset.contains(&id) {
                    mset.push(id);
                }
            }
        }
    }
}
