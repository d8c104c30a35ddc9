//! Kiselman's semigroup `K_n`: words, the completed rewriting system, canonical
//! elements, idempotents and the content map.

mod rewrite;
mod word;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use rewrite::{CriticalPair, RewriteRule, RewriteSystem, DEFAULT_MAX_RULES};
pub use word::{Generator, Word};

use crate::error::{Error, Result};
use crate::subset::Subset;

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;

/// An element of `K_n`, held as its shortlex normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    n: usize,
    nf: Word,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.nf.serialize(serializer)
    }
}

impl Element {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nf(&self) -> &Word {
        &self.nf
    }

    pub fn into_word(self) -> Word {
        self.nf
    }

    pub fn content(&self) -> Subset {
        self.nf.content()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.nf, f)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.nf, f)
    }
}

/// The content `c(w)`: indices occurring in `w`.
pub fn content(w: &Word) -> Subset {
    w.content()
}

/// `e_X`, the letters of `X` in descending order.
pub fn idempotent_word(x: Subset) -> Word {
    Word::idempotent(x)
}

/// `∀x ∈ X∖Y, ∀y ∈ Y∖X: x > y`.
pub fn dominates(x: Subset, y: Subset) -> bool {
    x.dominates(y)
}

impl RewriteSystem {
    /// The canonical element represented by `w`.
    pub fn reduce(&self, w: &Word) -> Result<Element> {
        self.require_complete()?;
        w.check_within(self.n())?;
        Ok(Element {
            n: self.n(),
            nf: self.normal_form(w),
        })
    }

    pub fn unit(&self) -> Element {
        Element {
            n: self.n(),
            nf: Word::empty(),
        }
    }

    pub fn generator(&self, index: usize) -> Result<Element> {
        self.reduce(&Word::generator(Generator::new(index, self.n())?))
    }

    /// The idempotent `e_X` as an element.
    pub fn idempotent(&self, x: Subset) -> Result<Element> {
        x.check_within(self.n())?;
        self.reduce(&Word::idempotent(x))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.require_complete()?;
        for operand in [a, b] {
            if operand.n != self.n() {
                return Err(Error::RankMismatch {
                    left: self.n(),
                    right: operand.n,
                });
            }
        }
        let mut letters = Vec::with_capacity(a.nf.len() + b.nf.len());
        letters.extend_from_slice(a.nf.letters());
        letters.extend_from_slice(b.nf.letters());
        Ok(Element {
            n: self.n(),
            nf: Word::from_raw(self.normalize_raw(&letters)),
        })
    }

    /// Product of several elements, left to right; the unit when empty.
    pub fn product<'a, I>(&self, factors: I) -> Result<Element>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        factors
            .into_iter()
            .try_fold(self.unit(), |acc, x| self.multiply(&acc, x))
    }

    pub fn is_idempotent(&self, x: &Element) -> Result<bool> {
        Ok(self.multiply(x, x)? == *x)
    }

    /// Closure of the unit under right multiplication by generators, in
    /// shortlex order. Fails once more than `cap` elements are found.
    pub fn enumerate_elements(&self, cap: usize) -> Result<Vec<Element>> {
        self.require_complete()?;
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        seen.insert(Word::empty());
        let mut frontier = vec![Word::empty()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 1..=self.n() as u8 {
                    let mut letters = w.letters().to_vec();
                    letters.push(g);
                    let nf = Word::from_raw(self.normalize_raw(&letters));
                    if seen.insert(nf.clone()) {
                        if seen.len() > cap {
                            return Err(Error::ElementLimitExceeded { cap });
                        }
                        next.push(nf);
                    }
                }
            }
            frontier = next;
        }
        Ok(seen
            .into_iter()
            .map(|nf| Element { n: self.n(), nf })
            .collect())
    }

    /// The three equivalent conditions on `(X, Y)`:
    /// `e_X e_Y` is idempotent, `e_X e_Y = e_{X∪Y}`, and `X` dominates `Y`.
    /// The first two are decided by rewriting, the third combinatorially.
    pub fn tfae_check(&self, x: Subset, y: Subset) -> Result<(bool, bool, bool)> {
        let ex = self.idempotent(x)?;
        let ey = self.idempotent(y)?;
        let prod = self.multiply(&ex, &ey)?;
        let idem = self.is_idempotent(&prod)?;
        let union = prod == self.idempotent(x.union(y))?;
        Ok((idem, union, dominates(x, y)))
    }

    /// The two equivalent braid conditions on idempotents:
    /// `X` dominates `Y` (combinatorial), and `e_X e_Y` is idempotent with
    /// `e_X e_Y e_X = e_Y e_X e_Y = e_X e_Y` (by rewriting).
    pub fn braid_check(&self, x: Subset, y: Subset) -> Result<(bool, bool)> {
        let ex = self.idempotent(x)?;
        let ey = self.idempotent(y)?;
        let xy = self.multiply(&ex, &ey)?;
        let xyx = self.multiply(&xy, &ex)?;
        let yxy = self.multiply(&ey, &self.multiply(&ex, &ey)?)?;
        let words = self.is_idempotent(&xy)? && xyx == xy && yxy == xy;
        Ok((dominates(x, y), words))
    }
}
