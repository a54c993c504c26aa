//! The condition–action–effect rule and its structural operations.

use crate::perception::{Condition, Effect, Mark, Perception, WILDCARD};
use std::fmt;

/// One C-A-E rule together with its learning bookkeeping: quality `q`,
/// reward prediction `r`, immediate-reward prediction `ir`, numerosity,
/// application count and the three timing fields used by GA scheduling.
#[derive(Clone, PartialEq, Debug)]
pub struct Classifier {
    pub condition: Condition,
    pub action: usize,
    pub effect: Effect,
    pub mark: Mark,
    /// Quality in [0,1].
    pub q: f64,
    /// Reward prediction.
    pub r: f64,
    /// Immediate-reward prediction.
    pub ir: f64,
    /// Micro-classifier count, >= 1.
    pub num: u32,
    /// Application (experience) count.
    pub exp: u64,
    /// Time of last GA participation.
    pub tga: u64,
    /// Time of last ALP application.
    pub talp: u64,
    /// Moving average of the interval between ALP applications.
    pub aav: f64,
}

impl Classifier {
    /// A fresh rule with the conventional neutral initialization.
    pub fn new(condition: Condition, action: usize, effect: Effect, time: u64) -> Self {
        Classifier {
            condition,
            action,
            effect,
            mark: Mark::empty(),
            q: 0.5,
            r: 0.0,
            ir: 0.0,
            num: 1,
            exp: 0,
            tga: time,
            talp: time,
            aav: 0.0,
        }
    }

    pub fn matches(&self, p: &Perception) -> bool {
        self.condition.matches(p)
    }

    pub fn anticipate(&self, p: &Perception) -> Perception {
        self.effect.anticipate(p)
    }

    pub fn anticipates_correctly(&self, before: &Perception, after: &Perception) -> bool {
        self.effect.anticipates_correctly(before, after)
    }

    pub fn is_reliable(&self, theta_r: f64) -> bool {
        self.q > theta_r
    }

    pub fn is_inadequate(&self, theta_i: f64) -> bool {
        self.q < theta_i
    }

    /// Action-selection fitness: quality times reward prediction.
    pub fn fitness(&self) -> f64 {
        self.q * self.r
    }

    /// True iff `self` may absorb `other`: reliable, experienced, unmarked,
    /// same action and effect, and a condition at least as general.
    pub fn subsumes(&self, other: &Classifier, theta_r: f64, theta_exp: u64) -> bool {
        self.is_reliable(theta_r)
            && self.exp > theta_exp
            && !self.mark.is_marked()
            && self.action == other.action
            && self.effect == other.effect
            && self.condition.is_more_general_or_equal(&other.condition)
    }

    /// Updates the application-average interval and stamps `talp`.
    /// Uses the moyenne-adaptive-modifiee scheme: plain average while the
    /// rule is young, exponential smoothing with rate `beta` afterwards.
    pub fn update_application_average(&mut self, time: u64, beta: f64) {
        let delta = time.saturating_sub(self.talp) as f64 - self.aav;
        if (self.exp as f64) < 1.0 / beta {
            self.aav += delta / self.exp as f64;
        } else {
            self.aav += beta * delta;
        }
        self.talp = time;
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-{}-{} q={:.3} r={:.1} num={}",
            self.condition, self.action, self.effect, self.q, self.r, self.num
        )
    }
}

/// Builds a rule directly from an observed transition: condition and effect
/// are specified exactly at the positions that changed, wildcards elsewhere.
/// A no-change transition yields the all-wildcard pass-through rule.
pub fn cover(before: &Perception, action: usize, after: &Perception, time: u64) -> Classifier {
    assert_eq!(before.len(), after.len());
    let mut condition = Condition::generic(before.len());
    let mut effect = Effect::passthrough(before.len());
    for i in 0..before.len() {
        let (b, a) = (before.symbols()[i], after.symbols()[i]);
        if b != a {
            condition.set(i, b);
            effect.set(i, a);
        }
    }
    Classifier::new(condition, action, effect, time)
}

/// True iff `symbol` is the wildcard.
pub fn is_wildcard(symbol: u8) -> bool {
    symbol == WILDCARD
}
