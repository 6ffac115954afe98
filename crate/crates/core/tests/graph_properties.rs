use std::collections::BTreeMap;

use girard_lab::digraph::{
    parse_digraph, random_digraph, serialize_digraph, ColorSet, ColoredDigraph,
};
use girard_lab::enumerate::{enum_ccw, enum_clsd};
use girard_lab::involution::{
    audit_involution, classify, enumerate_pairs, involute, walk_concat, PairClass, Walk,
};
use girard_lab::newton::{ell_total, theorem2_sum, verify_theorem2, NewtonCase};
use proptest::prelude::*;

fn class_counts<T>(
    items: &[T],
    key: impl Fn(&T) -> (usize, ColorSet),
) -> BTreeMap<(usize, ColorSet), usize> {
    let mut out = BTreeMap::new();
    for item in items {
        *out.entry(key(item)).or_insert(0) += 1;
    }
    out
}

fn arb_graph() -> impl Strategy<Value = ColoredDigraph> {
    (
        1usize..=3,
        1usize..=3,
        prop_oneof![Just(0.5), Just(1.0)],
        any::<u64>(),
    )
        .prop_map(|(n, k, density, seed)| random_digraph(n, k, density, 3, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_survive_relabeling(g in arb_graph(), shift in 0usize..3) {
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n + 1).collect();
        let h = g.relabel(&perm);
        let clsd = |x: &ColoredDigraph| class_counts(&enum_clsd(x, None, None), |gm| (gm.len(), gm.colors()));
        let ccw = |x: &ColoredDigraph| class_counts(&enum_ccw(x, None, None), |w| (w.len(), w.colors()));
        prop_assert_eq!(clsd(&g), clsd(&h));
        prop_assert_eq!(ccw(&g), ccw(&h));
        for r in 1..=g.k() {
            prop_assert_eq!(enumerate_pairs(&g, r, true).pairs.len(), enumerate_pairs(&h, r, true).pairs.len());
        }
    }

    #[test]
    fn involution_law_on_random_graphs(g in arb_graph()) {
        for r in 1..=g.k() {
            for pair in enumerate_pairs(&g, r, true).pairs {
                if classify(&pair) == PairClass::Good {
                    continue;
                }
                let image = involute(&pair).unwrap();
                prop_assert_eq!(classify(&image), PairClass::Bad);
                prop_assert!(image.colors_disjoint());
                prop_assert_eq!(image.weight(&g), -pair.weight(&g));
                prop_assert_eq!(involute(&image).unwrap(), pair);
            }
            let audit = audit_involution(&g, r);
            prop_assert!(audit.passed());
            prop_assert_eq!(&audit.total, &verify_theorem2(&g, r).residual);
        }
    }

    #[test]
    fn subset_indexing_matches_length_indexing(g in arb_graph()) {
        // index the sum by (p, q) with every pair of color subsets, letting
        // mismatched lengths contribute their (zero) values
        let k = g.k();
        for r in 1..=k + 1 {
            let mut by_lengths = girard_lab::poly::Polynomial::zero();
            for p in 0..=r {
                let q = r - p;
                for s in 0..(1u64 << k) {
                    for t in 0..(1u64 << k) {
                        let (s, t) = (ColorSet::from_bits(s), ColorSet::from_bits(t));
                        if s.is_disjoint(t) {
                            by_lengths += &girard_lab::enumerate::c_walk(&g, q, t) * &girard_lab::enumerate::ell(&g, p, s);
                        }
                    }
                }
            }
            prop_assert_eq!(by_lengths, theorem2_sum(&g, r));
        }
    }

    #[test]
    fn serialization_is_canonical(g in arb_graph()) {
        let text = serialize_digraph(&g);
        prop_assert_eq!(serialize_digraph(&parse_digraph(&text).unwrap()), text);
    }
}

#[test]
fn concatenation_associates() {
    let g = random_digraph(3, 3, 1.0, 3, 11);
    let walks: Vec<Walk> = enum_ccw(&g, None, None).iter().map(Walk::from).collect();
    let mut checked = 0;
    for a in walks.iter().take(20) {
        for b in walks.iter().filter(|b| b.start == a.end()).take(10) {
            for c in walks.iter().filter(|c| c.start == b.end()).take(10) {
                let left = walk_concat(&walk_concat(a, b).unwrap(), c).unwrap();
                let right = walk_concat(a, &walk_concat(b, c).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(left.len(), a.len() + b.len() + c.len());
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn case_one_has_no_good_pairs() {
    for seed in 0..30 {
        let g = random_digraph(2, 4, 1.0, 3, seed);
        for r in 3..=4 {
            let audit = audit_involution(&g, r);
            assert_eq!(audit.case, NewtonCase::RExceedsN);
            assert_eq!(audit.good_count, 0);
            assert!(audit.bad_weight_sum.is_zero());
            assert!(ell_total(&g, r).is_zero());
        }
    }
}
