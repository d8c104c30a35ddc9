//! Subsets of `{1, …, n}` packed into a machine word.
//!
//! Index `k` lives in bit `k - 1`. All public constructors and accessors speak
//! 1-based indices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` a [`Subset`] can describe.
pub const MAX_INDEX: usize = 32;

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_INDEX);
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!((1..=MAX_INDEX).contains(&index));
        Subset(1 << (index - 1))
    }

    /// Builds a subset of `{1, …, n}`, rejecting indices outside that range.
    pub fn from_indices<I>(n: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u32;
        for index in indices {
            if index == 0 || index > n || index > MAX_INDEX {
                return Err(Error::SubsetOutOfRange { index, n });
            }
            bits |= 1 << (index - 1);
        }
        Ok(Subset(bits))
    }

    /// Checks that only bits `1..=n` are set.
    pub fn check_within(self, n: usize) -> Result<()> {
        if self.is_subset(Subset::full(n.min(MAX_INDEX))) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                index: self.max().unwrap_or(0),
                n,
            })
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=MAX_INDEX).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!((1..=MAX_INDEX).contains(&index));
        self.0 |= 1 << (index - 1);
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Ascending 1-based indices.
    pub fn iter(self) -> impl DoubleEndedIterator<Item = usize> + Clone {
        (1..=MAX_INDEX).filter(move |&k| self.contains(k))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every element of `self ∖ other` exceeds every element of `other ∖ self`.
    ///
    /// This is the ordering condition shared by the idempotent product
    /// criterion, the braid lemma, sequence monotonicity and the matrix
    /// pattern test.
    pub fn dominates(self, other: Subset) -> bool {
        let ahead = self.difference(other);
        let behind = other.difference(self);
        match (ahead.min(), behind.max()) {
            (Some(lo), Some(hi)) => lo > hi,
            _ => true,
        }
    }

    /// All `2^n` subsets of `{1, …, n}` in ascending bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        debug_assert!(n < 32);
        (0u32..(1 << n)).map(Subset)
    }

    /// Braces-and-commas rendering, e.g. `{1,3}`.
    pub fn display(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_indices(MAX_INDEX, indices).map_err(serde::de::Error::custom)
    }
}
