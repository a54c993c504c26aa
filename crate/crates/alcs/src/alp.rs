//! Anticipatory learning process: quality updates, mark-driven
//! specialization, covering and insertion with subsumption.
//!
//! One pass processes every classifier of an action set against the
//! observed transition. A correct anticipation raises quality (or, when the
//! mark disagrees with the current situation, spawns a specialized
//! offspring); a wrong one lowers quality, records the situation in the
//! mark and, when the observed change is expressible by pure
//! specialization, spawns a corrected offspring. If nothing in the action
//! set anticipated the transition, a covering rule is built from it
//! directly. Rules whose quality falls below the inadequacy threshold are
//! removed on the spot.

use crate::classifier::{cover, Classifier};
use crate::perception::{Perception, WILDCARD};
use crate::population::{ClassifierId, Population};
use rand::Rng;

/// Learning-rate and threshold slice of the engine parameters used by ALP.
#[derive(Clone, Copy, Debug)]
pub struct AlpParams {
    pub beta: f64,
    pub theta_i: f64,
    pub theta_r: f64,
    pub theta_exp: u64,
}

/// Runs one ALP pass over `action_set` for the transition
/// `before --action--> after` at global time `time`.
///
/// Offspring and covering rules are inserted through ALP subsumption; the
/// action set is extended with every inserted rule, and `next_match_set`
/// (when given) with those matching `after`. Inadequate classifiers are
/// removed from the population and from both sets.
#[allow(clippy::too_many_arguments)]
pub fn apply_alp(
    pop: &mut Population,
    action_set: &mut Vec<ClassifierId>,
    before: &Perception,
    action: usize,
    after: &Perception,
    time: u64,
    mut next_match_set: Option<&mut Vec<ClassifierId>>,
    params: AlpParams,
    rng: &mut impl Rng,
) {
    let snapshot = action_set.clone();
    let mut any_expected = false;
    for id in snapshot {
        let (child, inadequate) = {
            let Some(cl) = pop.get_mut(id) else { continue };
            cl.exp += 1;
            cl.update_application_average(time, params.beta);
            if cl.anticipates_correctly(before, after) {
                any_expected = true;
                (expected_case(cl, before, params.beta, rng), false)
            } else {
                let child = unexpected_case(cl, before, after, params.beta);
                let inadequate = cl.is_inadequate(params.theta_i);
                (child, inadequate)
            }
        };
        if inadequate {
            pop.remove(id);
            action_set.retain(|&x| x != id);
            if let Some(mset) = next_match_set.as_deref_mut() {
                mset.retain(|&x| x != id);
            }
        }
        if let Some(mut child) = child {
            child.tga = time;
            child.talp = time;
            insert_offspring(
                pop,
                action_set,
                next_match_set.as_deref_mut(),
                after,
                child,
                params,
            );
        }
    }
    if !any_expected {
        let rule = cover(before, action, after, time);
        insert_offspring(pop, action_set, next_match_set, after, rule, params);
    }
}

/// Correct anticipation. Without a conflicting mark the quality simply
/// rises; otherwise an offspring specialized at the mark-discriminating
/// positions is returned and the parent is left as is.
fn expected_case(
    cl: &mut Classifier,
    before: &Perception,
    beta: f64,
    rng: &mut impl Rng,
) -> Option<Classifier> {
    let diff = cl.mark.differences(before, rng);
    if diff.specificity() == 0 {
        cl.q += beta * (1.0 - cl.q);
        return None;
    }
    let mut condition = cl.condition.clone();
    condition.specialize_with(&diff);
    let mut child = Classifier::new(condition, cl.action, cl.effect.clone(), 0);
    child.q = cl.q.max(0.5);
    child.r = cl.r;
    child.ir = cl.ir;
    child.aav = cl.aav;
    child.exp = 1;
    Some(child)
}

/// Wrong anticipation. Quality drops and the situation is marked. An
/// offspring is produced only when the observed change is expressible by
/// specializing pass-through positions: every already-specified effect
/// position must have predicted the actual change.
fn unexpected_case(
    cl: &mut Classifier,
    before: &Perception,
    after: &Perception,
    beta: f64,
) -> Option<Classifier> {
    cl.q -= beta * cl.q;
    cl.mark.set(before);
    for i in 0..before.len() {
        let e = cl.effect.at(i);
        if e != WILDCARD && (e != after.symbols()[i] || before.symbols()[i] == after.symbols()[i]) {
            return None;
        }
    }
    let mut condition = cl.condition.clone();
    let mut effect = cl.effect.clone();
    for i in 0..before.len() {
        let (b, a) = (before.symbols()[i], after.symbols()[i]);
        if cl.effect.at(i) == WILDCARD && b != a {
            condition.set(i, b);
            effect.set(i, a);
        }
    }
    let mut child = Classifier::new(condition, cl.action, effect, 0);
    child.q = cl.q.max(0.5);
    child.r = cl.r;
    child.ir = cl.ir;
    child.aav = cl.aav;
    child.exp = 1;
    Some(child)
}

fn same_structure(a: &Classifier, b: &Classifier) -> bool {
    a.condition == b.condition && a.action == b.action && a.effect == b.effect
}

/// ALP insertion: if the action set already holds a subsumer (the most
/// general wins) or a structurally identical rule, that rule's quality is
/// bumped instead of inserting a duplicate.
fn insert_offspring(
    pop: &mut Population,
    action_set: &mut Vec<ClassifierId>,
    next_match_set: Option<&mut Vec<ClassifierId>>,
    after: &Perception,
    child: Classifier,
    params: AlpParams,
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
        Some((id, _)) => {
            let cl = pop.get_mut(id).expect("stale id in action set");
            cl.q += params.beta * (1.0 - cl.q);
        }
        None => {
            let matches_next = child.matches(after);
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
