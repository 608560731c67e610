use std::sync::Arc;

use orelab_core::catalog::{builtin, BUILTIN_CATALOG};
use orelab_core::{all_subgroups, FiniteLattice};
use proptest::prelude::*;

/// Reference distributivity test on all triples, both laws.
fn distributive_oracle(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c))
                    && l.join(a, l.meet(b, c)) == l.meet(l.join(a, b), l.join(a, c))
            })
        })
    })
}

fn base() -> impl Strategy<Value = FiniteLattice> {
    prop_oneof![
        (1usize..5).prop_map(FiniteLattice::chain),
        (0usize..4).prop_map(FiniteLattice::boolean),
        Just(FiniteLattice::m3()),
        Just(FiniteLattice::n5()),
        (1u64..60).prop_map(|m| FiniteLattice::divisors(m).0),
    ]
}

fn lattice() -> impl Strategy<Value = FiniteLattice> {
    base().prop_recursive(3, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|l| l.reversed()),
            (inner.clone(), inner.clone())
                .prop_filter("size", |(a, b)| a.len() * b.len() <= 64)
                .prop_map(|(a, b)| a.product(&b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.concatenation(&b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distributivity_matches_oracle_and_is_stable(l in lattice(), m in lattice()) {
        prop_assert!(l.validate());
        let d = l.is_distributive();
        prop_assert_eq!(d, distributive_oracle(&l));
        prop_assert_eq!(l.reversed().is_distributive(), d);
        if d && m.is_distributive() {
            prop_assert!(l.concatenation(&m).is_distributive());
            if l.len() * m.len() <= 64 {
                prop_assert!(l.product(&m).is_distributive());
            }
            for a in 0..l.len() {
                for b in 0..l.len() {
                    if l.leq(a, b) {
                        prop_assert!(l.interval(a, b).0.is_distributive());
                    }
                }
            }
        }
    }

    #[test]
    fn complements_unique_when_distributive(l in lattice()) {
        if l.is_distributive() {
            for x in 0..l.len() {
                prop_assert!(l.complements(x).len() <= 1);
            }
        }
    }

    #[test]
    fn boolean_tests_agree_and_count(l in lattice()) {
        let b = l.is_boolean();
        prop_assert_eq!(b, l.is_boolean_by_atoms());
        if b {
            prop_assert_eq!(l.len(), 1usize << l.height());
            prop_assert!(l.is_distributive());
        }
        if l.is_distributive() {
            prop_assert!(l.is_top_boolean() && l.is_bottom_boolean());
        }
    }
}

#[test]
fn subgroup_lattices_match_set_operations() {
    for name in BUILTIN_CATALOG {
        let g = Arc::new(builtin(name).unwrap());
        let sl = all_subgroups(g.clone()).unwrap();
        let iv = sl.interval(&g.trivial_subgroup()).unwrap();
        assert_eq!(iv.len(), sl.len(), "{name}");
        if sl.len() > 50 {
            continue;
        }
        let lat = sl.lattice();
        for a in 0..sl.len() {
            for b in 0..sl.len() {
                let (ka, kb) = (sl.node(a), sl.node(b));
                assert_eq!(sl.node(lat.meet(a, b)).set(), &ka.set().intersection(kb.set()));
                let union: Vec<usize> = ka.set().union(kb.set()).iter().collect();
                assert_eq!(sl.node(lat.join(a, b)), &g.generate(&union));
                assert_eq!(lat.leq(a, b), ka.is_subgroup_of(kb));
            }
        }
    }
}

#[test]
fn cyclic_subgroup_counts_are_divisor_counts() {
    for n in 1..=100usize {
        let g = Arc::new(builtin(&format!("C{n}")).unwrap());
        let count = all_subgroups(g).unwrap().len();
        assert_eq!(count, (1..=n).filter(|d| n % d == 0).count(), "C{n}");
    }
}
