//! Randomized invariants at ranks beyond the exhaustive checks.

use std::sync::OnceLock;

use kiselman::boolmat::{self, BoolMatrix};
use kiselman::morphisms::{self, Endomorphism};
use kiselman::{RewriteSystem, SetSequence, Subset, Word};
use proptest::prelude::*;

fn k5() -> &'static RewriteSystem {
    static RS: OnceLock<RewriteSystem> = OnceLock::new();
    RS.get_or_init(|| RewriteSystem::completed(5, 10_000).unwrap())
}

fn d5() -> &'static [BoolMatrix] {
    static DN: OnceLock<Vec<BoolMatrix>> = OnceLock::new();
    DN.get_or_init(|| boolmat::enumerate_dn(5, 5).unwrap())
}

fn word5() -> impl Strategy<Value = Word> {
    prop::collection::vec(1usize..=5, 0..24).prop_map(|v| Word::new(5, v).unwrap())
}

fn dn5() -> impl Strategy<Value = BoolMatrix> {
    (0..1_725_316usize).prop_map(|i| d5()[i].clone())
}

fn seq5() -> impl Strategy<Value = SetSequence> {
    dn5().prop_map(|m| morphisms::psi_inv(&m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduce_is_idempotent(w in word5()) {
        let nf = k5().normal_form(&w);
        prop_assert_eq!(k5().normal_form(&nf), nf.clone());
        prop_assert!(nf <= w);
        prop_assert_eq!(nf.content(), w.content());
    }

    #[test]
    fn normal_forms_respect_concatenation(a in word5(), b in word5()) {
        let rs = k5();
        let lhs = rs.normal_form(&a.concat(&b));
        let rhs = rs.normal_form(&rs.normal_form(&a).concat(&rs.normal_form(&b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inserting_a_relation_keeps_the_class(a in word5(), b in word5(), i in 1usize..=5, j in 1usize..=5) {
        let rs = k5();
        let (lo, hi) = (i.min(j), i.max(j));
        prop_assume!(lo < hi);
        let rel = |v: &[usize]| Word::new(5, v.iter().copied()).unwrap();
        let base = rs.normal_form(&a.concat(&rel(&[hi, lo])).concat(&b));
        for side in [rel(&[lo, hi, lo]), rel(&[hi, lo, hi])] {
            prop_assert_eq!(rs.normal_form(&a.concat(&side).concat(&b)), base.clone());
        }
        let sq = rs.normal_form(&a.concat(&rel(&[i, i])).concat(&b));
        prop_assert_eq!(sq, rs.normal_form(&a.concat(&rel(&[i])).concat(&b)));
    }

    #[test]
    fn product_is_associative(a in word5(), b in word5(), c in word5()) {
        let rs = k5();
        let (a, b, c) = (rs.reduce(&a).unwrap(), rs.reduce(&b).unwrap(), rs.reduce(&c).unwrap());
        let left = rs.multiply(&rs.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = rs.multiply(&a, &rs.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dn_closed_and_psi_multiplicative(a in dn5(), b in dn5()) {
        let p = a.mul(&b).unwrap();
        prop_assert!(p.is_in_dn());
        let s = morphisms::psi_inv(&a).unwrap();
        let t = morphisms::psi_inv(&b).unwrap();
        prop_assert_eq!(morphisms::psi(&s.star(&t).unwrap()).unwrap(), p);
    }

    #[test]
    fn star_is_associative(x in seq5(), y in seq5(), z in seq5()) {
        let left = x.star(&y).unwrap().star(&z).unwrap();
        let right = x.star(&y.star(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compose_agrees_with_substitution(g in seq5(), f in seq5(), w in word5()) {
        let rs = k5();
        let g = Endomorphism::from_sequence(&g).unwrap();
        let f = Endomorphism::from_sequence(&f).unwrap();
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(&gf, &g.compose_via_apply(rs, &f).unwrap());
        let direct = gf.apply(rs, &w).unwrap();
        let staged = g.apply(rs, f.apply(rs, &w).unwrap().nf()).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn transpose_preserves_pattern_avoidance(rows in 1usize..=6, cols in 1usize..=6, bits in any::<u64>()) {
        let m = BoolMatrix::from_flat(rows, cols, bits & ((1u64 << (rows * cols)) - 1)).unwrap();
        prop_assert_eq!(m.avoids_pattern(), m.transpose().avoids_pattern());
    }

    #[test]
    fn serde_round_trips(m in dn5(), w in word5()) {
        let s = morphisms::psi_inv(&m).unwrap();
        let f = Endomorphism::from_sequence(&s).unwrap();

        let back: BoolMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
        let back: SetSequence = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
        let back: Endomorphism = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
        let back: Word = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn subset_json_round_trip(bits in any::<u32>()) {
        let x = Subset::from_bits(bits);
        let back: Subset = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn k5_has_1710_elements() {
    let elements = k5().enumerate_elements(100_000).unwrap();
    assert_eq!(elements.len(), 1710);
    let idempotents = elements
        .iter()
        .filter(|e| k5().is_idempotent(e).unwrap())
        .count();
    assert_eq!(idempotents, 32);
}

#[test]
fn d5_size_matches_formula() {
    let closed = kiselman::counting::dn_cardinality(5).unwrap();
    assert_eq!(closed.as_u64(), Some(d5().len() as u64));
    assert!(d5().windows(2).all(|w| w[0].to_flat() < w[1].to_flat()));
}

#[test]
fn non_monotone_endomorphism_json_is_rejected() {
    assert!(serde_json::from_str::<Endomorphism>(r#"{"n":2,"images":[[2],[1]]}"#).is_err());
    assert!(serde_json::from_str::<BoolMatrix>("[[1,0],[1]]").is_err());
}
