//! Reward-prediction updates for the classifiers of an action set.

use crate::population::{ClassifierId, Population};

/// Q-learning-style update: every classifier of the action set moves its
/// reward prediction toward `reward + gamma * max_payoff_next` and its
/// immediate-reward prediction toward `reward`, both at rate `beta`.
pub fn apply_rl(
    pop: &mut Population,
    action_set: &[ClassifierId],
    reward: f64,
    max_payoff_next: f64,
    beta: f64,
    gamma: f64,
) {
    for &id in action_set {
        if let Some(cl) = pop.get_mut(id) {
            cl.r += beta * (reward + gamma * max_payoff_next - cl.r);
            cl.ir += beta * (reward - cl.ir);
        }
    }
}

/// Highest q·r product among the classifiers of `set` that predict an
/// actual change; 0 when the set is empty or purely pass-through. Keeping
/// the do-nothing rules out prevents them from dominating payoff
/// propagation.
pub fn max_payoff(pop: &Population, set: &[ClassifierId]) -> f64 {
    set.iter()
        .filter_map(|&id| pop.get(id))
        .filter(|cl| cl.effect.predicts_change())
        .map(|cl| cl.fitness())
        .fold(None, |acc: Option<f64>, f| Some(acc.map_or(f, |a| a.max(f))))
        .unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Classifier;
    use crate::perception::{Condition, Effect};

    fn rule(c: &str, a: usize, e: &str, q: f64, r: f64) -> Classifier {
        let mut cl = Classifier::new(Condition::from_str(c), a, Effect::from_str(e), 0);
        cl.q = q;
        cl.r = r;
        cl
    }

    #[test]
    fn reward_moves_toward_target() {
        let mut pop = Population::new();
        let id = pop.insert(rule("##", 0, "1#", 0.5, 0.0));
        apply_rl(&mut pop, &[id], 1000.0, 0.0, 0.05, 0.95);
        let cl = pop.get(id).unwrap();
        assert!((cl.r - 50.0).abs() < 1e-12); // 0 + 0.05 * 1000
        assert!((cl.ir - 50.0).abs() < 1e-12);
    }

    #[test]
    fn zero_target_contracts_by_one_minus_beta() {
        let mut pop = Population::new();
        let id = pop.insert(rule("##", 0, "1#", 0.5, 80.0));
        apply_rl(&mut pop, &[id], 0.0, 0.0, 0.05, 0.95);
        assert!((pop.get(id).unwrap().r - 76.0).abs() < 1e-12); // 80 * 0.95
    }

    #[test]
    fn fixed_point_is_preserved_exactly() {
        let mut pop = Population::new();
        let reward = 123.5;
        let max_p = 321.25;
        let target = reward + 0.95 * max_p;
        let id = pop.insert(rule("##", 0, "1#", 0.5, target));
        apply_rl(&mut pop, &[id], reward, max_p, 0.05, 0.95);
        assert_eq!(pop.get(id).unwrap().r, target); // bitwise identical
    }

    #[test]
    fn max_payoff_of_empty_set_is_zero() {
        let pop = Population::new();
        assert_eq!(max_payoff(&pop, &[]), 0.0);
    }

    #[test]
    fn max_payoff_is_the_quality_reward_product() {
        let mut pop = Population::new();
        let id = pop.insert(rule("##", 0, "1#", 0.9, 100.0));
        assert!((max_payoff(&pop, &[id]) - 90.0).abs() < 1e-12);
    }

    #[test]
    fn passthrough_rules_are_excluded_from_max_payoff() {
        let mut pop = Population::new();
        let id = pop.insert(rule("##", 0, "##", 0.95, 900.0));
        assert_eq!(max_payoff(&pop, &[id]), 0.0);
        let id2 = pop.insert(rule("0#", 1, "1#", 0.5, 10.0));
        assert!((max_payoff(&pop, &[id, id2]) - 5.0).abs() < 1e-12);
    }
}
