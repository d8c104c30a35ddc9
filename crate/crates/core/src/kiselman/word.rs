use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_INDEX};

/// A generator `a_k`, stored by its 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u8);

impl Generator {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index == 0 || index > n || index > MAX_INDEX {
            return Err(Error::LetterOutOfRange { letter: index, n });
        }
        Ok(Generator(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word over the generators; the empty word is the unit.
///
/// Words order shortlex: shorter first, then lexicographically by index.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based indices, checking each against `n`.
    pub fn new<I>(n: usize, letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let letters = letters
            .into_iter()
            .map(|k| Generator::new(k, n).map(|g| g.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }

    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn generator(g: Generator) -> Self {
        Word(vec![g.0])
    }

    /// The idempotent `e_X`: the letters of `X` in strictly descending order.
    pub fn idempotent(x: Subset) -> Self {
        Word(x.iter().rev().map(|k| k as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&k| k as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The set of indices occurring in the word.
    pub fn content(&self) -> Subset {
        Subset::from_bits(self.0.iter().fold(0u32, |acc, &k| acc | 1 << (k - 1)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Fails if any letter exceeds `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k == 0 || k as usize > n) {
            Some(&k) => Err(Error::LetterOutOfRange {
                letter: k as usize,
                n,
            }),
            None => Ok(()),
        }
    }

    /// Dotted index rendering used in CSV output, e.g. `3.1`; the unit is `e`.
    pub fn dotted(&self) -> String {
        if self.is_empty() {
            return "e".to_string();
        }
        self.indices()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for k in &self.0 {
            write!(f, "a{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
