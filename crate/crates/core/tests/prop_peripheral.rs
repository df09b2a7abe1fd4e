use proptest::prelude::*;

use raagout_core::autos::{enumerate_generators, preserves_word, realize};
use raagout_core::peripheral::{is_invariant, saturate};
use raagout_core::{DefiningGraph, VSet};

mod common;

fn graph(min: usize, max: usize) -> impl Strategy<Value = DefiningGraph> {
    (min..=max).prop_flat_map(|n| (0u64..(1u64 << (n * (n - 1) / 2))).prop_map(move |m| common::graph_from_mask(n, m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn invariance_matches_generators(g in graph(2, 6), seed in any::<u64>(), bits in any::<u64>()) {
        let mut r = common::rng(seed);
        let pp = common::random_pair(&mut r, &g);
        let delta = VSet(bits & g.all().0);
        prop_assume!(!delta.is_empty() && delta != g.all());
        let oracle = enumerate_generators(&g, &pp)
            .unwrap()
            .iter()
            .all(|x| preserves_word(&g, &realize(&g, x).unwrap(), delta));
        prop_assert_eq!(is_invariant(&g, &pp, delta).unwrap(), oracle);
    }

    #[test]
    fn saturation_is_closed(g in graph(2, 6), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let pp = common::random_pair(&mut r, &g);
        let sat = saturate(&g, &pp).unwrap();
        prop_assert!(sat.saturated);
        for d in &pp.g {
            prop_assert!(sat.g.contains(d));
        }
        for &a in &sat.g {
            prop_assert!(is_invariant(&g, &pp, a).unwrap());
            for &b in &sat.g {
                let c = a.inter(b);
                prop_assert!(c.is_empty() || sat.g.contains(&c), "{:?} ∩ {:?}", a, b);
            }
        }
        // adding invariant subgraphs does not change the group
        let again = saturate(&g, &sat).unwrap();
        prop_assert_eq!(&again.g, &sat.g);
        prop_assert_eq!(
            enumerate_generators(&g, &sat).unwrap(),
            enumerate_generators(&g, &pp).unwrap()
        );
    }
}

#[test]
fn invariance_suite_small() {
    let r = common::invariance_suite(60, 200, 21);
    assert!(r.ok(), "{:?}", r.first_failure);
}
