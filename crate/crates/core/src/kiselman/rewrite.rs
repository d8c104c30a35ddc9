//! Shortlex string rewriting for the Kiselman presentation, with
//! Knuth–Bendix completion and an explicit confluence check.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::word::Word;
use crate::error::{Error, Result};
use crate::subset::MAX_INDEX;

pub const DEFAULT_MAX_RULES: usize = 10_000;

/// `lhs → rhs` with `rhs` shortlex-smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
}

impl RewriteRule {
    /// Orients an equation so the larger side is on the left. `None` if the
    /// sides coincide.
    pub fn oriented(a: Word, b: Word) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Some(RewriteRule { lhs: a, rhs: b }),
            std::cmp::Ordering::Less => Some(RewriteRule { lhs: b, rhs: a }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// An overlap of two left-hand sides together with its two one-step
/// rewrites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, Default)]
struct RuleIndex {
    by_lhs: HashMap<Vec<u8>, Vec<u8>>,
    lengths: Vec<usize>,
}

impl RuleIndex {
    fn build(rules: &[RewriteRule]) -> Self {
        let by_lhs: HashMap<_, _> = rules
            .iter()
            .map(|r| (r.lhs.letters().to_vec(), r.rhs.letters().to_vec()))
            .collect();
        let mut lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        RuleIndex { by_lhs, lengths }
    }

    /// Leftmost-innermost normalisation. The output buffer never contains a
    /// left-hand side, so after each pushed letter only suffixes need checking.
    fn normalize(&self, input: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::with_capacity(input.len());
        let mut pending: Vec<u8> = input.iter().rev().copied().collect();
        while let Some(letter) = pending.pop() {
            out.push(letter);
            for &len in &self.lengths {
                if len > out.len() {
                    break;
                }
                let start = out.len() - len;
                if let Some(rhs) = self.by_lhs.get(&out[start..]) {
                    out.truncate(start);
                    pending.extend(rhs.iter().rev());
                    break;
                }
            }
        }
        out
    }

    fn is_reducible(&self, word: &[u8]) -> bool {
        self.lengths
            .iter()
            .any(|&len| len <= word.len() && word.windows(len).any(|w| self.by_lhs.contains_key(w)))
    }
}

/// A presentation of `K_n` as an oriented rewriting system.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    n: usize,
    rules: Vec<RewriteRule>,
    complete: bool,
    index: RuleIndex,
}

impl RewriteSystem {
    /// The defining relations, oriented by shortlex:
    /// `a_i a_i → a_i`, and for `i < j` both `a_j a_i a_j → a_j a_i` and
    /// `a_i a_j a_i → a_j a_i`.
    pub fn presentation(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_INDEX {
            return Err(Error::InvalidRank { n, max: MAX_INDEX });
        }
        let w = |v: &[usize]| Word::from_raw(v.iter().map(|&k| k as u8).collect());
        let mut rules: Vec<RewriteRule> = (1..=n)
            .map(|i| RewriteRule {
                lhs: w(&[i, i]),
                rhs: w(&[i]),
            })
            .collect();
        for i in 1..=n {
            for j in i + 1..=n {
                rules.push(RewriteRule {
                    lhs: w(&[j, i, j]),
                    rhs: w(&[j, i]),
                });
                rules.push(RewriteRule {
                    lhs: w(&[i, j, i]),
                    rhs: w(&[j, i]),
                });
            }
        }
        Ok(Self::from_rules(n, rules, false))
    }

    /// The completed presentation of `K_n`.
    pub fn completed(n: usize, max_rules: usize) -> Result<Self> {
        Self::presentation(n)?.complete(max_rules)
    }

    fn from_rules(n: usize, rules: Vec<RewriteRule>, complete: bool) -> Self {
        let index = RuleIndex::build(&rules);
        RewriteSystem {
            n,
            rules,
            complete,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Rewrites `word` to an irreducible word under the current rules.
    ///
    /// Before completion the result depends on the strategy; afterwards it is
    /// the unique shortlex-least representative.
    pub fn normal_form(&self, word: &Word) -> Word {
        Word::from_raw(self.index.normalize(word.letters()))
    }

    /// Knuth–Bendix completion under shortlex.
    ///
    /// Unresolved critical pairs are oriented into new rules and the system is
    /// inter-reduced after every addition. Fails with
    /// [`Error::RuleLimitExceeded`] once the rule count passes `max_rules`.
    pub fn complete(&self, max_rules: usize) -> Result<Self> {
        let mut rules = self.rules.clone();
        let mut index = RuleIndex::build(&rules);
        let mut queue: VecDeque<(Word, Word)> = VecDeque::new();
        loop {
            for cp in critical_pairs(&rules) {
                let left = index.normalize(cp.left.letters());
                let right = index.normalize(cp.right.letters());
                if left != right {
                    queue.push_back((Word::from_raw(left), Word::from_raw(right)));
                }
            }
            if queue.is_empty() {
                break;
            }
            while let Some((a, b)) = queue.pop_front() {
                let a = Word::from_raw(index.normalize(a.letters()));
                let b = Word::from_raw(index.normalize(b.letters()));
                let Some(rule) = RewriteRule::oriented(a, b) else {
                    continue;
                };
                rules.push(rule);
                interreduce(&mut rules, &mut queue);
                if rules.len() > max_rules {
                    return Err(Error::RuleLimitExceeded { limit: max_rules });
                }
                index = RuleIndex::build(&rules);
            }
        }
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let done = Self::from_rules(self.n, rules, true);
        debug_assert!(done.unresolved_critical_pairs().is_empty());
        Ok(done)
    }

    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        critical_pairs(&self.rules)
    }

    /// Critical pairs whose sides reach different irreducible words. Empty
    /// exactly when the (terminating) system is confluent.
    pub fn unresolved_critical_pairs(&self) -> Vec<CriticalPair> {
        self.critical_pairs()
            .into_iter()
            .filter(|cp| self.normal_form(&cp.left) != self.normal_form(&cp.right))
            .collect()
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }

    pub(crate) fn normalize_raw(&self, letters: &[u8]) -> Vec<u8> {
        self.index.normalize(letters)
    }
}

impl Serialize for RewriteSystem {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("RewriteSystem", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("complete", &self.complete)?;
        s.serialize_field("rules", &self.rules)?;
        s.end()
    }
}

/// Drops every rule whose left side is reducible by another rule (requeueing
/// it as an equation) and normalises the surviving right sides.
fn interreduce(rules: &mut Vec<RewriteRule>, queue: &mut VecDeque<(Word, Word)>) {
    loop {
        let mut removed = None;
        for i in 0..rules.len() {
            let lhs = rules[i].lhs.letters();
            let hit = rules.iter().enumerate().any(|(j, other)| {
                j != i
                    && other.lhs.len() <= lhs.len()
                    && lhs
                        .windows(other.lhs.len())
                        .any(|w| w == other.lhs.letters())
            });
            if hit {
                removed = Some(i);
                break;
            }
        }
        match removed {
            Some(i) => {
                let rule = rules.swap_remove(i);
                queue.push_back((rule.lhs, rule.rhs));
            }
            None => break,
        }
    }
    let index = RuleIndex::build(rules);
    for rule in rules.iter_mut() {
        if index.is_reducible(rule.rhs.letters()) {
            rule.rhs = Word::from_raw(index.normalize(rule.rhs.letters()));
        }
    }
}

fn splice(prefix: &[u8], middle: &[u8], suffix: &[u8]) -> Word {
    let mut v = Vec::with_capacity(prefix.len() + middle.len() + suffix.len());
    v.extend_from_slice(prefix);
    v.extend_from_slice(middle);
    v.extend_from_slice(suffix);
    Word::from_raw(v)
}

fn critical_pairs(rules: &[RewriteRule]) -> Vec<CriticalPair> {
    let mut pairs = Vec::new();
    for (i, first) in rules.iter().enumerate() {
        let l1 = first.lhs.letters();
        for (j, second) in rules.iter().enumerate() {
            let l2 = second.lhs.letters();
            // proper overlaps: a suffix of l1 equals a prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] {
                    pairs.push(CriticalPair {
                        overlap: splice(l1, &l2[k..], &[]),
                        left: splice(first.rhs.letters(), &l2[k..], &[]),
                        right: splice(&l1[..l1.len() - k], second.rhs.letters(), &[]),
                    });
                }
            }
            // inclusions: l2 occurs inside l1
            if i != j && l2.len() <= l1.len() {
                for pos in 0..=l1.len() - l2.len() {
                    if l1[pos..pos + l2.len()] == *l2 {
                        pairs.push(CriticalPair {
                            overlap: first.lhs.clone(),
                            left: first.rhs.clone(),
                            right: splice(&l1[..pos], second.rhs.letters(), &l1[pos + l2.len()..]),
                        });
                    }
                }
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Word {
        Word::new(MAX_INDEX, v.iter().copied()).unwrap()
    }

    fn rule_set(rs: &RewriteSystem) -> Vec<(Vec<u8>, Vec<u8>)> {
        let mut v: Vec<_> = rs
            .rules()
            .iter()
            .map(|r| (r.lhs.letters().to_vec(), r.rhs.letters().to_vec()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn presentation_rejects_zero() {
        assert!(matches!(
            RewriteSystem::presentation(0),
            Err(Error::InvalidRank { n: 0, .. })
        ));
    }

    #[test]
    fn presentation_rank_one() {
        let rs = RewriteSystem::presentation(1).unwrap();
        assert_eq!(rule_set(&rs), vec![(vec![1, 1], vec![1])]);
        assert!(!rs.is_complete());
    }

    #[test]
    fn presentation_rank_two() {
        let rs = RewriteSystem::presentation(2).unwrap();
        let mut expected = vec![
            (vec![1, 1], vec![1]),
            (vec![2, 2], vec![2]),
            (vec![2, 1, 2], vec![2, 1]),
            (vec![1, 2, 1], vec![2, 1]),
        ];
        expected.sort();
        assert_eq!(rule_set(&rs), expected);
    }

    #[test]
    fn presentation_rank_three_counts_rules() {
        let rs = RewriteSystem::presentation(3).unwrap();
        assert_eq!(rs.rules().len(), 9);
        assert!(rs.rules().iter().all(|r| r.rhs.len() < r.lhs.len()));
        assert!(rs.rules().iter().all(|r| r.rhs < r.lhs));
    }

    #[test]
    fn completion_is_confluent() {
        for n in 1..=4 {
            let rs = RewriteSystem::completed(n, DEFAULT_MAX_RULES).unwrap();
            assert!(rs.is_complete());
            assert!(rs.unresolved_critical_pairs().is_empty(), "n = {n}");
            assert!(rs.rules().iter().all(|r| r.rhs < r.lhs));
        }
    }

    #[test]
    fn completion_rank_two_reduces_braids() {
        let rs = RewriteSystem::completed(2, DEFAULT_MAX_RULES).unwrap();
        assert_eq!(rs.normal_form(&w(&[1, 2, 1])), w(&[2, 1]));
        assert_eq!(rs.normal_form(&w(&[2, 1, 2])), w(&[2, 1]));
    }

    #[test]
    fn completion_respects_rule_limit() {
        let err = RewriteSystem::presentation(3)
            .unwrap()
            .complete(3)
            .unwrap_err();
        assert_eq!(err, Error::RuleLimitExceeded { limit: 3 });
    }

    #[test]
    fn critical_pairs_of_overlapping_rules() {
        let rs = RewriteSystem::presentation(1).unwrap();
        // a1a1 overlaps itself once: a1a1a1
        let cps = rs.critical_pairs();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].overlap, w(&[1, 1, 1]));
        assert_eq!(cps[0].left, w(&[1, 1]));
        assert_eq!(cps[0].right, w(&[1, 1]));
    }

    #[test]
    fn rule_dump_shape() {
        let rs = RewriteSystem::presentation(1).unwrap();
        let json = serde_json::to_string(&rs).unwrap();
        assert_eq!(
            json,
            r#"{"n":1,"complete":false,"rules":[{"lhs":[1,1],"rhs":[1]}]}"#
        );
    }
}
