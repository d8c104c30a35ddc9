//! The monoid `M_n` of monotone set sequences under `∗`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_INDEX};

/// Largest `n` for which [`enumerate`] scans all `(2^n)^n` sequences.
pub const DEFAULT_ENUMERATION_GUARD: usize = 4;

/// `(X_1, …, X_n)` with every `X_i ⊆ {1, …, n}`. Not necessarily monotone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Subset>", into = "Vec<Subset>")]
pub struct SetSequence {
    parts: Vec<Subset>,
}

impl SetSequence {
    pub fn new(parts: Vec<Subset>) -> Result<Self> {
        let n = parts.len();
        if n == 0 || n > MAX_INDEX {
            return Err(Error::InvalidRank { n, max: MAX_INDEX });
        }
        for part in &parts {
            part.check_within(n)?;
        }
        Ok(SetSequence { parts })
    }

    /// Convenience constructor from 1-based index lists.
    pub fn from_indices(parts: &[&[usize]]) -> Result<Self> {
        let n = parts.len();
        let parts = parts
            .iter()
            .map(|p| Subset::from_indices(n, p.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<Subset>) -> Self {
        SetSequence { parts }
    }

    /// `({1}, {2}, …, {n})`, the unit of `M_n`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new((1..=n).map(Subset::singleton).collect())
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    /// `X_i` for a 1-based `i`.
    pub fn part(&self, i: usize) -> Subset {
        self.parts[i - 1]
    }

    /// For every `j > i`, each element of `X_j ∖ X_i` exceeds each element
    /// of `X_i ∖ X_j`. All pairs are checked; the relation is not transitive.
    pub fn is_monotone(&self) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, xi)| self.parts[i + 1..].iter().all(|xj| xj.dominates(*xi)))
    }

    /// `(X ∗ Y)_i = ⋃_{j ∈ Y_i} X_j`. Both operands must be monotone.
    pub fn star(&self, other: &SetSequence) -> Result<SetSequence> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        for operand in [self, other] {
            if !operand.is_monotone() {
                return Err(Error::NotMonotone(operand.to_string()));
            }
        }
        let z = self.star_unchecked(other);
        debug_assert!(z.is_monotone());
        Ok(z)
    }

    pub(crate) fn star_unchecked(&self, other: &SetSequence) -> SetSequence {
        let parts = other
            .parts
            .iter()
            .map(|yi| {
                yi.iter()
                    .fold(Subset::EMPTY, |acc, j| acc.union(self.parts[j - 1]))
            })
            .collect();
        SetSequence { parts }
    }
}

impl TryFrom<Vec<Subset>> for SetSequence {
    type Error = Error;

    fn try_from(parts: Vec<Subset>) -> Result<Self> {
        SetSequence::new(parts)
    }
}

impl From<SetSequence> for Vec<Subset> {
    fn from(s: SetSequence) -> Self {
        s.parts
    }
}

impl fmt::Display for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn is_monotone(s: &SetSequence) -> bool {
    s.is_monotone()
}

pub fn star(x: &SetSequence, y: &SetSequence) -> Result<SetSequence> {
    x.star(y)
}

pub fn unit_sequence(n: usize) -> Result<SetSequence> {
    SetSequence::unit(n)
}

/// All of `M_n`, lexicographic on the bitmask tuple with `X_1` most
/// significant. Refuses `n` above `guard`.
pub fn enumerate(n: usize, guard: usize) -> Result<Vec<SetSequence>> {
    if n == 0 {
        return Err(Error::InvalidRank { n, max: MAX_INDEX });
    }
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "monotone sequence enumeration rank",
            requested: n,
            limit: guard,
        });
    }
    // Depth-first over positions; a prefix that is already non-monotone
    // cannot be extended, so whole subtrees are skipped.
    let mut out = Vec::new();
    let mut prefix: Vec<Subset> = Vec::with_capacity(n);
    extend(n, &mut prefix, &mut out);
    Ok(out)
}

fn extend(n: usize, prefix: &mut Vec<Subset>, out: &mut Vec<SetSequence>) {
    if prefix.len() == n {
        out.push(SetSequence::from_parts_unchecked(prefix.clone()));
        return;
    }
    for next in Subset::all(n) {
        if prefix.iter().all(|earlier| next.dominates(*earlier)) {
            prefix.push(next);
            extend(n, prefix, out);
            prefix.pop();
        }
    }
}
