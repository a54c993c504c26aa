//! Fixed-length symbol strings: perceptions, conditions, effects and marks.
//!
//! A perception is the raw sensory string an environment emits. Conditions
//! and effects are strings of the same length over the environment alphabet
//! extended with `'#'`: in a condition it is a don't-care, in an effect a
//! pass-through (the symbol is copied from the current perception).

use std::fmt;

/// The don't-care / pass-through symbol.
pub const WILDCARD: u8 = b'#';

/// A fixed-length observation over an environment-declared alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perception(Vec<u8>);

/// Little-endian packing of up to 16 symbols into one word, used for
/// single-instruction condition matching.
fn pack_bytes(bytes: &[u8]) -> Option<u128> {
    if bytes.len() > 16 {
        return None;
    }
    let mut buf = [0u8; 16];
    buf[..bytes.len()].copy_from_slice(bytes);
    Some(u128::from_le_bytes(buf))
}

impl Perception {
    pub fn new(symbols: Vec<u8>) -> Self {
        Perception(symbols)
    }

    pub(crate) fn packed(&self) -> Option<u128> {
        pack_bytes(&self.0)
    }

    pub fn from_str(s: &str) -> Self {
        Perception(s.as_bytes().to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    /// Returns this perception with `tail` appended (goal augmentation).
    pub fn concat(&self, tail: &Perception) -> Perception {
        let mut v = Vec::with_capacity(self.0.len() + tail.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&tail.0);
        Perception(v)
    }

    /// Splits off the trailing `tail_len` symbols, undoing `concat`.
    pub fn split_tail(&self, tail_len: usize) -> (Perception, Perception) {
        assert!(tail_len <= self.0.len());
        let cut = self.0.len() - tail_len;
        (
            Perception(self.0[..cut].to_vec()),
            Perception(self.0[cut..].to_vec()),
        )
    }
}

impl fmt::Display for Perception {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("<non-utf8>"))
    }
}

impl fmt::Debug for Perception {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The C part of a rule: perception symbols or `'#'` don't-cares. Keeps a
/// packed (value, mask) pair so matching against a packed perception is a
/// single mask-and-compare.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Condition {
    symbols: Vec<u8>,
    packed: Option<(u128, u128)>,
}

impl Condition {
    fn with_symbols(symbols: Vec<u8>) -> Self {
        let mut c = Condition { symbols, packed: None };
        c.repack();
        c
    }

    fn repack(&mut self) {
        self.packed = if self.symbols.len() > 16 {
            None
        } else {
            let mut value = [0u8; 16];
            let mut mask = [0u8; 16];
            for (i, &s) in self.symbols.iter().enumerate() {
                if s != WILDCARD {
                    value[i] = s;
                    mask[i] = 0xff;
                }
            }
            Some((u128::from_le_bytes(value), u128::from_le_bytes(mask)))
        };
    }

    pub fn from_str(s: &str) -> Self {
        Condition::with_symbols(s.as_bytes().to_vec())
    }

    /// All-wildcard condition of the given length.
    pub fn generic(len: usize) -> Self {
        Condition::with_symbols(vec![WILDCARD; len])
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of non-wildcard positions.
    pub fn specificity(&self) -> usize {
        self.symbols.iter().filter(|&&c| c != WILDCARD).count()
    }

    pub fn is_generic(&self) -> bool {
        self.symbols.iter().all(|&c| c == WILDCARD)
    }

    pub fn set(&mut self, idx: usize, symbol: u8) {
        self.symbols[idx] = symbol;
        self.repack();
    }

    pub fn at(&self, idx: usize) -> u8 {
        self.symbols[idx]
    }

    /// True iff every specified symbol equals the corresponding perception
    /// symbol. Lengths must agree.
    pub fn matches(&self, p: &Perception) -> bool {
        assert_eq!(self.symbols.len(), p.len(), "condition/perception length mismatch");
        match (self.packed, p.packed()) {
            (Some((value, mask)), Some(packed)) => packed & mask == value,
            _ => self
                .symbols
                .iter()
                .zip(p.symbols())
                .all(|(&c, &s)| c == WILDCARD || c == s),
        }
    }

    /// Packed-path matching; callers must have checked the length.
    pub(crate) fn matches_packed(&self, packed: u128) -> bool {
        match self.packed {
            Some((value, mask)) => packed & mask == value,
            None => unreachable!("packed matching on an over-long condition"),
        }
    }

    /// True iff `self` matches every perception `other` matches
    /// (positionwise: `self` is `'#'` or equal to `other`).
    pub fn is_more_general_or_equal(&self, other: &Condition) -> bool {
        assert_eq!(self.symbols.len(), other.symbols.len());
        self.symbols
            .iter()
            .zip(other.symbols.iter())
            .all(|(&g, &s)| g == WILDCARD || g == s)
    }

    /// Copies every specified position of `pattern` into `self`.
    pub fn specialize_with(&mut self, pattern: &Condition) {
        assert_eq!(self.symbols.len(), pattern.symbols.len());
        for (dst, &src) in self.symbols.iter_mut().zip(pattern.symbols.iter()) {
            if src != WILDCARD {
                *dst = src;
            }
        }
        self.repack();
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.symbols).unwrap_or("<non-utf8>"))
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The E part of a rule: predicted symbols or `'#'` pass-throughs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Effect(Vec<u8>);

impl Effect {
    pub fn from_str(s: &str) -> Self {
        Effect(s.as_bytes().to_vec())
    }

    /// All-pass-through effect of the given length.
    pub fn passthrough(len: usize) -> Self {
        Effect(vec![WILDCARD; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn set(&mut self, idx: usize, symbol: u8) {
        self.0[idx] = symbol;
    }

    pub fn at(&self, idx: usize) -> u8 {
        self.0[idx]
    }

    /// True iff the effect predicts at least one change.
    pub fn predicts_change(&self) -> bool {
        self.0.iter().any(|&e| e != WILDCARD)
    }

    /// Applies the effect to `p`: specified positions are replaced,
    /// pass-through positions copied.
    pub fn anticipate(&self, p: &Perception) -> Perception {
        assert_eq!(self.0.len(), p.len(), "effect/perception length mismatch");
        let symbols = self
            .0
            .iter()
            .zip(p.symbols())
            .map(|(&e, &s)| if e == WILDCARD { s } else { e })
            .collect();
        Perception::new(symbols)
    }

    /// True iff the effect explains the observed transition exactly: every
    /// pass-through position stayed unchanged and every specified position
    /// changed to the predicted symbol.
    pub fn anticipates_correctly(&self, before: &Perception, after: &Perception) -> bool {
        assert_eq!(self.0.len(), before.len());
        assert_eq!(self.0.len(), after.len());
        self.0
            .iter()
            .zip(before.symbols())
            .zip(after.symbols())
            .all(|((&e, &b), &a)| {
                if e == WILDCARD {
                    b == a
                } else {
                    e == a && b != a
                }
            })
    }
}

impl fmt::Display for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("<non-utf8>"))
    }
}

impl fmt::Debug for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Per-position record of the symbols seen in situations where a rule's
/// anticipation failed. An empty mark means the rule was never marked.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Mark {
    sets: Vec<Vec<u8>>,
}

impl Mark {
    pub fn empty() -> Self {
        Mark { sets: Vec::new() }
    }

    pub fn is_marked(&self) -> bool {
        !self.sets.is_empty()
    }

    /// Records the failing perception, position by position.
    pub fn set(&mut self, p: &Perception) {
        if self.sets.is_empty() {
            self.sets = vec![Vec::new(); p.len()];
        }
        assert_eq!(self.sets.len(), p.len());
        for (set, &s) in self.sets.iter_mut().zip(p.symbols()) {
            if !set.contains(&s) {
                set.push(s);
                set.sort_unstable();
            }
        }
    }

    pub fn symbols_at(&self, idx: usize) -> &[u8] {
        &self.sets[idx]
    }

    /// Difference pattern between the mark and a perception the rule just
    /// anticipated correctly in. Positions where `p` carries a symbol the
    /// mark never saw are clear discriminators: one of them, chosen at
    /// random, is specialized. When none exist, all ambiguous positions
    /// (mark sets with more than one symbol) are specialized at once.
    pub fn differences(&self, p: &Perception, rng: &mut impl rand::Rng) -> Condition {
        let mut diff = Condition::generic(p.len());
        if !self.is_marked() {
            return diff;
        }
        assert_eq!(self.sets.len(), p.len());
        let clear: Vec<usize> = (0..p.len())
            .filter(|&i| !self.sets[i].contains(&p.symbols()[i]))
            .collect();
        if !clear.is_empty() {
            let idx = clear[rng.gen_range(0..clear.len())];
            diff.set(idx, p.symbols()[idx]);
        } else {
            for i in 0..p.len() {
                if self.sets[i].len() > 1 {
                    diff.set(i, p.symbols()[i]);
                }
            }
        }
        diff
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn all_wildcard_condition_matches_anything() {
        let c = Condition::from_str("########");
        assert!(c.matches(&Perception::from_str("01100110")));
    }

    #[test]
    fn specified_symbol_must_agree() {
        let p = Perception::from_str("01100110");
        assert!(Condition::from_str("0#######").matches(&p));
        assert!(!Condition::from_str("1#######").matches(&p));
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn match_length_mismatch_is_a_contract_violation() {
        Condition::from_str("##").matches(&Perception::from_str("010"));
    }

    #[test]
    fn passthrough_effect_is_identity() {
        let p = Perception::from_str("01100110");
        assert_eq!(Effect::from_str("########").anticipate(&p), p);
    }

    #[test]
    fn effect_substitutes_specified_positions() {
        let p = Perception::from_str("01100110");
        assert_eq!(
            Effect::from_str("1#######").anticipate(&p),
            Perception::from_str("11100110")
        );
        assert_eq!(
            Effect::from_str("10######").anticipate(&p),
            Perception::from_str("10100110")
        );
    }

    // Position-by-position oracle for anticipate.
    #[test]
    fn anticipate_agrees_with_positionwise_rule() {
        let effects = ["########", "10######", "###9####", "10101010"];
        let p = Perception::from_str("01100110");
        for e in effects {
            let eff = Effect::from_str(e);
            let got = eff.anticipate(&p);
            for i in 0..p.len() {
                let expected = if e.as_bytes()[i] == WILDCARD {
                    p.symbols()[i]
                } else {
                    e.as_bytes()[i]
                };
                assert_eq!(got.symbols()[i], expected, "effect {e} position {i}");
            }
        }
    }

    #[test]
    fn correct_anticipation_requires_no_change_under_passthrough() {
        let e = Effect::from_str("########");
        let p = Perception::from_str("01100110");
        assert!(e.anticipates_correctly(&p, &p));
        assert!(!e.anticipates_correctly(&p, &Perception::from_str("11100110")));
    }

    #[test]
    fn correct_anticipation_requires_actual_change_at_specified_positions() {
        let e = Effect::from_str("1#######");
        let before = Perception::from_str("01100110");
        let after = Perception::from_str("11100110");
        assert!(e.anticipates_correctly(&before, &after));
        // predicted change that did not occur
        assert!(!e.anticipates_correctly(&after, &after));
    }

    // Exhaustive single-position oracle: every (effect, before, after) case
    // over a two-symbol alphabet, checked against the definition.
    #[test]
    fn anticipates_correctly_matches_exhaustive_definition() {
        let syms = [b'0', b'1'];
        let effs = [b'#', b'0', b'1'];
        for &e in &effs {
            for &b in &syms {
                for &a in &syms {
                    let eff = Effect(vec![e]);
                    let before = Perception::new(vec![b]);
                    let after = Perception::new(vec![a]);
                    let expected = if e == WILDCARD { b == a } else { e == a && b != a };
                    assert_eq!(eff.anticipates_correctly(&before, &after), expected);
                }
            }
        }
    }

    #[test]
    fn mark_records_and_discriminates() {
        let mut m = Mark::empty();
        assert!(!m.is_marked());
        m.set(&Perception::from_str("01"));
        assert!(m.is_marked());
        assert_eq!(m.symbols_at(0), &[b'0']);

        let mut rng = StdRng::seed_from_u64(1);
        // position 1 carries a fresh symbol -> clear difference
        let diff = m.differences(&Perception::from_str("09"), &mut rng);
        assert_eq!(diff.symbols(), b"#9");
    }

    #[test]
    fn mark_falls_back_to_ambiguous_positions() {
        let mut m = Mark::empty();
        m.set(&Perception::from_str("01"));
        m.set(&Perception::from_str("11"));
        let mut rng = StdRng::seed_from_u64(1);
        // both symbols of position 0 already marked, position 1 too ->
        // nothing clear; only position 0 is ambiguous (two symbols seen)
        let diff = m.differences(&Perception::from_str("01"), &mut rng);
        assert_eq!(diff.symbols(), b"0#");
    }

    #[test]
    fn concat_and_split_are_inverse() {
        let base = Perception::from_str("01100110");
        let goal = Perception::from_str("77");
        let aug = base.concat(&goal);
        assert_eq!(aug.len(), 10);
        let (b, g) = aug.split_tail(2);
        assert_eq!(b, base);
        assert_eq!(g, goal);
    }
}
