//! The classifier population: id-stable storage, match/action set
//! formation, structural-duplicate merging and ε-greedy action selection.

use crate::classifier::Classifier;
use crate::perception::{Condition, Effect, Perception};
use indexmap::IndexMap;
use rand::Rng;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

/// Stable handle to a classifier; never reused within a run.
pub type ClassifierId = u64;

#[derive(Clone, PartialEq, Eq, Hash)]
struct StructuralKey {
    condition: Condition,
    action: usize,
    effect: Effect,
}

fn key_of(cl: &Classifier) -> StructuralKey {
    StructuralKey {
        condition: cl.condition.clone(),
        action: cl.action,
        effect: cl.effect.clone(),
    }
}

/// A multiset of classifiers. No two members share the same
/// (condition, action, effect); structural duplicates are merged by
/// incrementing numerosity.
#[derive(Clone, Default)]
pub struct Population {
    members: IndexMap<ClassifierId, Classifier>,
    by_structure: HashMap<StructuralKey, ClassifierId>,
    next_id: ClassifierId,
}

impl Population {
    pub fn new() -> Self {
        Population::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, id: ClassifierId) -> Option<&Classifier> {
        self.members.get(&id)
    }

    pub fn get_mut(&mut self, id: ClassifierId) -> Option<&mut Classifier> {
        self.members.get_mut(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClassifierId, &Classifier)> {
        self.members.iter().map(|(&id, cl)| (id, cl))
    }

    pub fn find_identical(&self, cl: &Classifier) -> Option<ClassifierId> {
        self.by_structure.get(&key_of(cl)).copied()
    }

    /// Inserts a classifier, merging with a structural duplicate by
    /// incrementing its numerosity. Returns the id holding the structure.
    pub fn insert(&mut self, cl: Classifier) -> ClassifierId {
        if let Some(id) = self.find_identical(&cl) {
            let existing = self.members.get_mut(&id).expect("index out of sync");
            existing.num += cl.num;
            return id;
        }
        self.insert_unchecked(cl)
    }

    /// Inserts a classifier known not to duplicate an existing structure.
    pub fn insert_unchecked(&mut self, cl: Classifier) -> ClassifierId {
        debug_assert!(self.find_identical(&cl).is_none(), "duplicate structure");
        let id = self.next_id;
        self.next_id += 1;
        self.by_structure.insert(key_of(&cl), id);
        self.members.insert(id, cl);
        id
    }

    pub fn remove(&mut self, id: ClassifierId) -> Option<Classifier> {
        let cl = self.members.shift_remove(&id)?;
        self.by_structure.remove(&key_of(&cl));
        Some(cl)
    }

    /// Ids of all classifiers whose condition matches `p`, in insertion order.
    pub fn match_set(&self, p: &Perception) -> Vec<ClassifierId> {
        match p.packed() {
            Some(packed) => self
                .members
                .iter()
                .filter(|(_, cl)| {
                    debug_assert_eq!(cl.condition.len(), p.len());
                    cl.condition.matches_packed(packed)
                })
                .map(|(&id, _)| id)
                .collect(),
            None => self
                .members
                .iter()
                .filter(|(_, cl)| cl.matches(p))
                .map(|(&id, _)| id)
                .collect(),
        }
    }

    /// Ids of all classifiers matching `p` that advocate `action`.
    pub fn action_set(&self, p: &Perception, action: usize) -> Vec<ClassifierId> {
        match p.packed() {
            Some(packed) => self
                .members
                .iter()
                .filter(|(_, cl)| {
                    debug_assert_eq!(cl.condition.len(), p.len());
                    cl.action == action && cl.condition.matches_packed(packed)
                })
                .map(|(&id, _)| id)
                .collect(),
            None => self
                .members
                .iter()
                .filter(|(_, cl)| cl.action == action && cl.matches(p))
                .map(|(&id, _)| id)
                .collect(),
        }
    }

    /// Sum of numerosities over the whole population.
    pub fn total_numerosity(&self) -> u64 {
        self.members.values().map(|cl| cl.num as u64).sum()
    }

    /// Number of distinct classifiers with quality above `theta_r`.
    pub fn reliable_count(&self, theta_r: f64) -> usize {
        self.members
            .values()
            .filter(|cl| cl.is_reliable(theta_r))
            .count()
    }

    /// Order-independent digest of the population contents, including all
    /// learning state. Two populations with the same rules and statistics
    /// hash equal regardless of insertion history.
    pub fn fingerprint(&self) -> u64 {
        let mut entries: Vec<Vec<u8>> = self
            .members
            .values()
            .map(|cl| {
                let mut line = Vec::new();
                line.extend_from_slice(cl.condition.symbols());
                line.push(b'|');
                line.extend_from_slice(&cl.action.to_le_bytes());
                line.extend_from_slice(cl.effect.symbols());
                line.extend_from_slice(&cl.q.to_bits().to_le_bytes());
                line.extend_from_slice(&cl.r.to_bits().to_le_bytes());
                line.extend_from_slice(&cl.ir.to_bits().to_le_bytes());
                line.extend_from_slice(&u64::from(cl.num).to_le_bytes());
                line.extend_from_slice(&cl.exp.to_le_bytes());
                line.extend_from_slice(&cl.tga.to_le_bytes());
                line.extend_from_slice(&cl.talp.to_le_bytes());
                line.extend_from_slice(&cl.aav.to_bits().to_le_bytes());
                if cl.mark.is_marked() {
                    for i in 0..cl.condition.len() {
                        line.push(b'_');
                        line.extend_from_slice(cl.mark.symbols_at(i));
                    }
                }
                line
            })
            .collect();
        entries.sort();
        let mut hasher = DefaultHasher::new();
        entries.hash(&mut hasher);
        hasher.finish()
    }
}

/// ε-greedy action selection over a match set: with probability `epsilon` a
/// uniformly random action, otherwise the action of the matching classifier
/// with the highest q·r product, ties broken by the lowest action index.
/// Pass-through rules are consulted only when nothing in the match set
/// predicts a change, so the ubiquitous do-nothing rules cannot pin the
/// agent against a wall. An empty match set always selects uniformly at
/// random.
pub fn select_action(
    population: &Population,
    match_set: &[ClassifierId],
    action_count: usize,
    epsilon: f64,
    rng: &mut impl Rng,
) -> usize {
    if match_set.is_empty() || rng.gen::<f64>() < epsilon {
        return rng.gen_range(0..action_count);
    }
    let best = |require_change: bool| {
        let mut best: Option<(f64, usize)> = None;
        for &id in match_set {
            let Some(cl) = population.get(id) else { continue };
            if require_change && !cl.effect.predicts_change() {
                continue;
            }
            let fitness = cl.fitness();
            let better = match best {
                None => true,
                Some((bf, ba)) => fitness > bf || (fitness == bf && cl.action < ba),
            };
            if better {
                best = Some((fitness, cl.action));
            }
        }
        best
    };
    match best(true).or_else(|| best(false)) {
        Some((_, action)) => action,
        None => rng.gen_range(0..action_count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::cover;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn rule(c: &str, a: usize, e: &str) -> Classifier {
        Classifier::new(Condition::from_str(c), a, Effect::from_str(e), 0)
    }

    #[test]
    fn duplicate_structures_merge_by_numerosity() {
        let mut pop = Population::new();
        let id1 = pop.insert(rule("0#", 1, "1#"));
        let id2 = pop.insert(rule("0#", 1, "1#"));
        assert_eq!(id1, id2);
        assert_eq!(pop.len(), 1);
        assert_eq!(pop.total_numerosity(), 2);
    }

    #[test]
    fn merging_conserves_total_numerosity() {
        let mut rng = StdRng::seed_from_u64(3);
        let mut pop = Population::new();
        let mut inserted = 0u64;
        for _ in 0..500 {
            let c = ["0#", "1#", "##", "#0"][rng.gen_range(0..4)];
            let e = ["1#", "##", "#1"][rng.gen_range(0..3)];
            let a = rng.gen_range(0..3);
            pop.insert(rule(c, a, e));
            inserted += 1;
            assert_eq!(pop.total_numerosity(), inserted);
        }
        assert!(pop.len() < 40); // far fewer structures than inserts
    }

    #[test]
    fn removal_keeps_structural_index_consistent() {
        let mut pop = Population::new();
        let id = pop.insert(rule("0#", 1, "1#"));
        pop.remove(id);
        assert!(pop.find_identical(&rule("0#", 1, "1#")).is_none());
        let id2 = pop.insert(rule("0#", 1, "1#"));
        assert_ne!(id, id2);
    }

    #[test]
    fn match_and_action_sets_respect_condition_and_action() {
        let mut pop = Population::new();
        pop.insert(rule("0#", 0, "1#"));
        pop.insert(rule("1#", 0, "0#"));
        pop.insert(rule("##", 1, "##"));
        let p = Perception::from_str("01");
        assert_eq!(pop.match_set(&p).len(), 2);
        assert_eq!(pop.action_set(&p, 0).len(), 1);
        assert_eq!(pop.action_set(&p, 1).len(), 1);
    }

    #[test]
    fn pure_exploration_reaches_every_action() {
        let pop = Population::new();
        let mut rng = StdRng::seed_from_u64(9);
        let mut seen = [false; 8];
        for _ in 0..500 {
            seen[select_action(&pop, &[], 8, 1.0, &mut rng)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn greedy_selection_maximizes_quality_times_reward() {
        let mut pop = Population::new();
        let mut a = rule("##", 2, "1#");
        a.q = 0.9;
        a.r = 100.0;
        let mut b = rule("##", 5, "0#");
        b.q = 0.5;
        b.r = 500.0;
        let ids = vec![pop.insert(a), pop.insert(b)];
        let mut rng = StdRng::seed_from_u64(0);
        // 0.9*100 = 90 < 0.5*500 = 250
        assert_eq!(select_action(&pop, &ids, 8, 0.0, &mut rng), 5);
    }

    #[test]
    fn greedy_ties_break_toward_lowest_action() {
        let mut pop = Population::new();
        let ids = vec![pop.insert(rule("##", 4, "1#")), pop.insert(rule("##", 2, "0#"))];
        let mut rng = StdRng::seed_from_u64(0);
        // both have q*r = 0
        assert_eq!(select_action(&pop, &ids, 8, 0.0, &mut rng), 2);
    }

    #[test]
    fn empty_match_set_selects_uniformly() {
        let pop = Population::new();
        let mut rng = StdRng::seed_from_u64(4);
        let mut counts = [0usize; 4];
        for _ in 0..4000 {
            counts[select_action(&pop, &[], 4, 0.0, &mut rng)] += 1;
        }
        for c in counts {
            assert!(c > 800, "uniformity violated: {counts:?}");
        }
    }

    #[test]
    fn fingerprint_ignores_insertion_order() {
        let mut p1 = Population::new();
        let mut p2 = Population::new();
        p1.insert(rule("0#", 0, "1#"));
        p1.insert(rule("1#", 1, "0#"));
        p2.insert(rule("1#", 1, "0#"));
        p2.insert(rule("0#", 0, "1#"));
        assert_eq!(p1.fingerprint(), p2.fingerprint());

        p1.insert(cover(
            &Perception::from_str("00"),
            2,
            &Perception::from_str("01"),
            7,
        ));
        assert_ne!(p1.fingerprint(), p2.fingerprint());
    }
}
