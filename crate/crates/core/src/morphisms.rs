//! `End(K_n)` as content tuples, and the maps to monotone sequences and to
//! pattern-avoiding matrices.
//!
//! An endomorphism sends each generator to an idempotent, and idempotents are
//! determined by their content, so `φ` is stored as `(c(φ(a_1)), …, c(φ(a_n)))`.
//! Endomorphisms are monoid endomorphisms: the unit maps to the unit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::kiselman::{Element, RewriteSystem, Word};
use crate::monotone::SetSequence;
use crate::subset::{Subset, MAX_INDEX};

/// Brute-force endomorphism search scans `(2^n)^n` candidates.
pub const DEFAULT_BRUTE_FORCE_GUARD: usize = 4;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct Endomorphism {
    images: Vec<Subset>,
}

/// Generator images with no relation check; input to
/// [`is_endomorphism`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct CandidateMap {
    images: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    n: usize,
    images: Vec<Subset>,
}

impl TryFrom<RawMap> for CandidateMap {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        if raw.images.len() != raw.n {
            return Err(Error::ShapeMismatch(format!(
                "{} images for n = {}",
                raw.images.len(),
                raw.n
            )));
        }
        CandidateMap::new(raw.images)
    }
}

impl From<CandidateMap> for RawMap {
    fn from(c: CandidateMap) -> Self {
        RawMap {
            n: c.images.len(),
            images: c.images,
        }
    }
}

impl TryFrom<RawMap> for Endomorphism {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        let cand = CandidateMap::try_from(raw)?;
        Endomorphism::from_sequence(&SetSequence::new(cand.images)?)
    }
}

impl From<Endomorphism> for RawMap {
    fn from(e: Endomorphism) -> Self {
        RawMap {
            n: e.images.len(),
            images: e.images,
        }
    }
}

impl CandidateMap {
    pub fn new(images: Vec<Subset>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_INDEX {
            return Err(Error::InvalidRank { n, max: MAX_INDEX });
        }
        for image in &images {
            image.check_within(n)?;
        }
        Ok(CandidateMap { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }
}

impl Endomorphism {
    pub fn identity(n: usize) -> Result<Self> {
        Ok(Endomorphism {
            images: SetSequence::unit(n)?.parts().to_vec(),
        })
    }

    /// The unique endomorphism with `a_i ↦ e_{X_i}`; `s` must be monotone.
    pub fn from_sequence(s: &SetSequence) -> Result<Self> {
        if !s.is_monotone() {
            return Err(Error::NotMonotone(s.to_string()));
        }
        Ok(Endomorphism {
            images: s.parts().to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `c(φ(a_i))` for each generator.
    pub fn images(&self) -> &[Subset] {
        &self.images
    }

    /// `Φ(φ) = (c(φ(a_1)), …, c(φ(a_n)))`.
    pub fn phi(&self) -> SetSequence {
        SetSequence::from_parts_unchecked(self.images.clone())
    }

    /// `Ψ(Φ(φ))`.
    pub fn to_matrix(&self) -> BoolMatrix {
        BoolMatrix::from_columns(&self.images).expect("images are within range")
    }

    /// `φ(a_i)` as a word.
    pub fn image_word(&self, i: usize) -> Word {
        Word::idempotent(self.images[i - 1])
    }

    /// Substitutes `e_{images[k]}` for each letter `a_k` and reduces.
    pub fn apply(&self, rs: &RewriteSystem, w: &Word) -> Result<Element> {
        if rs.n() != self.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: rs.n(),
            });
        }
        w.check_within(self.n())?;
        let mut image = Word::empty();
        for k in w.indices() {
            image = image.concat(&self.image_word(k));
        }
        rs.reduce(&image)
    }

    /// `self ∘ f`: `images[i] = ⋃_{j ∈ f.images[i]} self.images[j]`.
    pub fn compose(&self, f: &Endomorphism) -> Result<Endomorphism> {
        if self.n() != f.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: f.n(),
            });
        }
        let images = f
            .images
            .iter()
            .map(|xi| {
                xi.iter()
                    .fold(Subset::EMPTY, |acc, j| acc.union(self.images[j - 1]))
            })
            .collect();
        Ok(Endomorphism { images })
    }

    /// `self ∘ f` computed by substitution: apply `self` to each `f(a_i)` and
    /// read off the content.
    pub fn compose_via_apply(&self, rs: &RewriteSystem, f: &Endomorphism) -> Result<Endomorphism> {
        if self.n() != f.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: f.n(),
            });
        }
        let mut images = Vec::with_capacity(self.n());
        for i in 1..=self.n() {
            images.push(self.apply(rs, &f.image_word(i))?.content());
        }
        Ok(Endomorphism { images })
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.phi(), f)
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn phi(f: &Endomorphism) -> SetSequence {
    f.phi()
}

pub fn endo_from_sequence(s: &SetSequence) -> Result<Endomorphism> {
    Endomorphism::from_sequence(s)
}

pub fn apply(rs: &RewriteSystem, f: &Endomorphism, w: &Word) -> Result<Element> {
    f.apply(rs, w)
}

pub fn compose(g: &Endomorphism, f: &Endomorphism) -> Result<Endomorphism> {
    g.compose(f)
}

/// With `b_i = e_{images[i]}`, checks in `K_n` that `b_i² = b_i` and
/// `b_i b_j b_i = b_j b_i b_j = b_j b_i` for all `i < j`. Uses rewriting only.
pub fn is_endomorphism(rs: &RewriteSystem, cand: &CandidateMap) -> Result<bool> {
    if rs.n() != cand.n() {
        return Err(Error::RankMismatch {
            left: cand.n(),
            right: rs.n(),
        });
    }
    let b = cand
        .images
        .iter()
        .map(|&x| rs.idempotent(x))
        .collect::<Result<Vec<_>>>()?;
    for bi in &b {
        if rs.multiply(bi, bi)? != *bi {
            return Ok(false);
        }
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !relation_holds(rs, &b[i], &b[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `lo hi lo = hi lo hi = hi lo` where `lo`, `hi` are the images of `a_i`,
/// `a_j` with `i < j`.
fn relation_holds(rs: &RewriteSystem, lo: &Element, hi: &Element) -> Result<bool> {
    let hl = rs.multiply(hi, lo)?;
    let lhl = rs.multiply(lo, &hl)?;
    let hlh = rs.multiply(&hl, hi)?;
    Ok(lhl == hl && hlh == hl)
}

/// `Ψ(X_1, …, X_n)`: column `i` is the characteristic vector of `X_i`.
pub fn psi(s: &SetSequence) -> Result<BoolMatrix> {
    if !s.is_monotone() {
        return Err(Error::NotMonotone(s.to_string()));
    }
    let m = BoolMatrix::from_columns(s.parts())?;
    debug_assert!(m.is_in_dn());
    Ok(m)
}

/// Column supports of a matrix in `D_n`.
pub fn psi_inv(m: &BoolMatrix) -> Result<SetSequence> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} is not square",
            m.rows(),
            m.cols()
        )));
    }
    if !m.avoids_pattern() {
        return Err(Error::PatternViolation(m.to_string()));
    }
    Ok(SetSequence::from_parts_unchecked(m.columns()))
}

/// Every endomorphism of `K_n`, found by testing all `(2^n)^n` generator
/// assignments against the defining relations in `K_n`.
///
/// Relation outcomes depend only on the pair of images, so they are tabulated
/// once per pair of subsets through the rewriting system. Output is
/// lexicographic on the image tuple.
pub fn brute_force_enumerate_end(rs: &RewriteSystem, guard: usize) -> Result<Vec<Endomorphism>> {
    let n = rs.n();
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "brute-force endomorphism rank",
            requested: n,
            limit: guard,
        });
    }
    let subsets: Vec<Subset> = Subset::all(n).collect();
    let idems = subsets
        .iter()
        .map(|&x| rs.idempotent(x))
        .collect::<Result<Vec<_>>>()?;
    let squares_ok = idems
        .iter()
        .map(|e| rs.multiply(e, e).map(|sq| sq == *e))
        .collect::<Result<Vec<_>>>()?;
    let width = subsets.len();
    let mut pair_ok = vec![false; width * width];
    for (a, lo) in idems.iter().enumerate() {
        for (b, hi) in idems.iter().enumerate() {
            pair_ok[a * width + b] = relation_holds(rs, lo, hi)?;
        }
    }

    let total = 1u64 << (n * n);
    let mask = (width - 1) as u64;
    let mut out = Vec::new();
    for code in 0..total {
        let images: Vec<usize> = (0..n)
            .map(|i| ((code >> (n * (n - 1 - i))) & mask) as usize)
            .collect();
        let ok = images.iter().all(|&x| squares_ok[x])
            && (0..n).all(|i| (i + 1..n).all(|j| pair_ok[images[i] * width + images[j]]));
        if ok {
            out.push(Endomorphism {
                images: images.into_iter().map(|x| subsets[x]).collect(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kiselman::DEFAULT_MAX_RULES;
    use crate::monotone;

    fn system(n: usize) -> RewriteSystem {
        RewriteSystem::completed(n, DEFAULT_MAX_RULES).unwrap()
    }

    fn seq(parts: &[&[usize]]) -> SetSequence {
        SetSequence::from_indices(parts).unwrap()
    }

    fn endo(parts: &[&[usize]]) -> Endomorphism {
        Endomorphism::from_sequence(&seq(parts)).unwrap()
    }

    fn cand(parts: &[&[usize]]) -> CandidateMap {
        CandidateMap::new(seq(parts).parts().to_vec()).unwrap()
    }

    fn word(v: &[usize]) -> Word {
        Word::new(8, v.iter().copied()).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            Endomorphism::identity(3).unwrap().phi(),
            SetSequence::unit(3).unwrap()
        );
        assert_eq!(endo(&[&[], &[]]).phi(), seq(&[&[], &[]]));
        assert_eq!(endo(&[&[1, 2], &[2]]).phi(), seq(&[&[1, 2], &[2]]));
    }

    #[test]
    fn from_sequence_examples() {
        assert_eq!(
            endo(&[&[1], &[2], &[3]]),
            Endomorphism::identity(3).unwrap()
        );
        let f = endo(&[&[2], &[2]]);
        let rs = system(2);
        assert_eq!(f.apply(&rs, &word(&[1])).unwrap().nf(), &word(&[2]));
        assert_eq!(f.apply(&rs, &word(&[2])).unwrap().nf(), &word(&[2]));
        assert!(matches!(
            Endomorphism::from_sequence(&seq(&[&[2], &[1]])),
            Err(Error::NotMonotone(_))
        ));
    }

    #[test]
    fn apply_examples() {
        let rs = system(2);
        let id = Endomorphism::identity(2).unwrap();
        assert_eq!(id.apply(&rs, &word(&[2, 1])).unwrap().nf(), &word(&[2, 1]));
        let f = endo(&[&[2], &[2]]);
        assert_eq!(f.apply(&rs, &word(&[2, 1])).unwrap().nf(), &word(&[2]));
        assert!(f.apply(&rs, &Word::empty()).unwrap().nf().is_empty());
        assert!(matches!(
            f.apply(&rs, &word(&[3])),
            Err(Error::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn is_endomorphism_examples() {
        let rs = system(2);
        assert!(is_endomorphism(&rs, &cand(&[&[1], &[2]])).unwrap());
        assert!(!is_endomorphism(&rs, &cand(&[&[2], &[1]])).unwrap());
        assert!(is_endomorphism(&rs, &cand(&[&[], &[]])).unwrap());
    }

    #[test]
    fn compose_examples() {
        let rs = system(2);
        let id = Endomorphism::identity(2).unwrap();
        let f = endo(&[&[1, 2], &[2]]);
        let g = endo(&[&[2], &[2]]);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf, endo(&[&[2], &[2]]));
        assert_eq!(g.compose_via_apply(&rs, &f).unwrap(), gf);
        assert!(matches!(
            g.compose(&Endomorphism::identity(3).unwrap()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn psi_examples() {
        for n in 1..=3 {
            assert_eq!(
                psi(&SetSequence::unit(n).unwrap()).unwrap(),
                BoolMatrix::identity(n).unwrap()
            );
        }
        let m = psi(&seq(&[&[1, 2], &[2]])).unwrap();
        assert_eq!(m, BoolMatrix::from_rows(&[[1, 0], [1, 1]]).unwrap());
        assert_eq!(
            psi(&seq(&[&[], &[], &[]])).unwrap(),
            BoolMatrix::zeros(3, 3).unwrap()
        );
        assert!(psi(&seq(&[&[2], &[1]])).is_err());
    }

    #[test]
    fn psi_inv_examples() {
        assert_eq!(
            psi_inv(&BoolMatrix::identity(3).unwrap()).unwrap(),
            SetSequence::unit(3).unwrap()
        );
        let m = BoolMatrix::from_rows(&[[1, 0], [1, 1]]).unwrap();
        assert_eq!(psi_inv(&m).unwrap(), seq(&[&[1, 2], &[2]]));
        assert_eq!(
            psi_inv(&BoolMatrix::zeros(2, 2).unwrap()).unwrap(),
            seq(&[&[], &[]])
        );
        let bad = BoolMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(psi_inv(&bad), Err(Error::PatternViolation(_))));
        assert!(psi_inv(&BoolMatrix::zeros(2, 3).unwrap()).is_err());
    }

    #[test]
    fn brute_force_sizes() {
        let sizes: Vec<usize> = (1..=3)
            .map(|n| brute_force_enumerate_end(&system(n), 4).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![2, 15, 330]);
        let e2 = brute_force_enumerate_end(&system(2), 4).unwrap();
        assert!(!e2.iter().any(|e| e.images() == seq(&[&[2], &[1]]).parts()));
        assert!(matches!(
            brute_force_enumerate_end(&system(5), 4),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn tabulated_search_matches_direct_relation_check() {
        for n in 1..=2 {
            let rs = system(n);
            let found = brute_force_enumerate_end(&rs, 4).unwrap();
            let direct: Vec<_> = (0..1u64 << (n * n))
                .map(|code| {
                    let images = (0..n)
                        .map(|i| {
                            Subset::from_bits(((code >> (n * (n - 1 - i))) & ((1 << n) - 1)) as u32)
                        })
                        .collect();
                    CandidateMap::new(images).unwrap()
                })
                .filter(|c| is_endomorphism(&rs, c).unwrap())
                .map(|c| Endomorphism { images: c.images })
                .collect();
            assert_eq!(found, direct);
        }
    }

    #[test]
    fn brute_force_matches_monotone_sequences() {
        for n in 1..=3 {
            let brute = brute_force_enumerate_end(&system(n), 4).unwrap();
            let via_m: Vec<_> = monotone::enumerate(n, 4)
                .unwrap()
                .iter()
                .map(|s| Endomorphism::from_sequence(s).unwrap())
                .collect();
            assert_eq!(brute, via_m);
        }
    }

    #[test]
    fn json_shape() {
        let f = endo(&[&[1, 2], &[2]]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"n":2,"images":[[1,2],[2]]}"#);
        let back: Endomorphism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Endomorphism>(r#"{"n":2,"images":[[2],[1]]}"#).is_err());
        assert!(serde_json::from_str::<Endomorphism>(r#"{"n":3,"images":[[2],[1]]}"#).is_err());
        let c: CandidateMap = serde_json::from_str(r#"{"n":2,"images":[[2],[1]]}"#).unwrap();
        assert_eq!(c.images().len(), 2);
    }
}
