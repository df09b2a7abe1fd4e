use proptest::prelude::*;

use raagout_core::autos::{
    acts_trivially_on, acts_trivially_word, apply, commutator, compose, enumerate_generators,
    gen_in_relative, is_inner, out0_membership, power, preserves, preserves_word, realize,
};
use raagout_core::words::equal;
use raagout_core::{Automorphism, DefiningGraph, GroupWord, LaurenceGenerator, VSet};

mod common;

fn graph(min: usize, max: usize) -> impl Strategy<Value = DefiningGraph> {
    (min..=max).prop_flat_map(|n| (0u64..(1u64 << (n * (n - 1) / 2))).prop_map(move |m| common::graph_from_mask(n, m)))
}

fn is_identity(g: &DefiningGraph, phi: &Automorphism) -> bool {
    (0..g.n()).all(|v| equal(g, &phi.forward[v], &GroupWord::letter(v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generators_are_automorphisms(g in graph(1, 6), pick in any::<prop::sample::Index>()) {
        let cands = common::candidate_generators(&g);
        let gen = &cands[pick.index(cands.len())];
        let phi = realize(&g, gen).unwrap();
        prop_assert!(is_identity(&g, &compose(&g, &phi, &phi.inverse())));
        prop_assert!(is_identity(&g, &compose(&g, &phi.inverse(), &phi)));
        prop_assert!(is_identity(&g, &compose(&g, &power(&g, &phi, 3), &power(&g, &phi, -3))));
        prop_assert!(out0_membership(&g, &phi).unwrap());
    }

    #[test]
    fn closed_forms_match_words(g in graph(2, 6), pick in any::<prop::sample::Index>(), bits in any::<u64>()) {
        let cands = common::candidate_generators(&g);
        let gen = &cands[pick.index(cands.len())];
        let delta = VSet(bits & g.all().0);
        prop_assume!(!delta.is_empty());
        let phi = realize(&g, gen).unwrap();
        prop_assert_eq!(preserves(&g, gen, delta), preserves_word(&g, &phi, delta));
        prop_assert_eq!(acts_trivially_on(&g, gen, delta), acts_trivially_word(&g, &phi, delta).is_yes());
    }

    #[test]
    fn membership_matches_oracle(g in graph(2, 6), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let pp = common::random_pair(&mut r, &g);
        for gen in common::candidate_generators(&g) {
            let phi = realize(&g, &gen).unwrap();
            let oracle = pp.g.iter().all(|&d| preserves_word(&g, &phi, d))
                && pp.h.iter().all(|&d| acts_trivially_word(&g, &phi, d).is_yes());
            prop_assert_eq!(gen_in_relative(&g, &gen, &pp).unwrap(), oracle, "{:?}", gen);
        }
        for gen in enumerate_generators(&g, &pp).unwrap() {
            prop_assert!(gen_in_relative(&g, &gen, &pp).unwrap());
        }
    }

    #[test]
    fn inner_witness_conjugates(g in graph(1, 6), c in prop::collection::vec((0u16..6, any::<bool>()), 0..8)) {
        let c = GroupWord(c.into_iter().filter(|(v, _)| (*v as usize) < g.n()).map(|(v, neg)| raagout_core::Letter { v, neg }).collect());
        let phi = Automorphism::inner(&g, &c);
        let w = is_inner(&g, &phi);
        prop_assert!(w.is_yes());
        if let raagout_core::Verdict::Yes(x) = w {
            for v in 0..g.n() {
                prop_assert!(equal(&g, &x.conjugate(&GroupWord::letter(v)), &apply(&g, &phi, &GroupWord::letter(v))));
            }
        }
    }

    #[test]
    fn complementary_partial_conjugations_agree_mod_inner(g in graph(3, 6), v in 0usize..6) {
        prop_assume!(v < g.n());
        let rest = g.all().minus(g.star(v));
        let comps = g.components(rest);
        prop_assume!(comps.len() >= 2);
        let k = comps[0];
        let a = realize(&g, &LaurenceGenerator::PartialConj { acting: v, k }).unwrap();
        let b = realize(&g, &LaurenceGenerator::PartialConj { acting: v, k: rest.minus(k) }).unwrap();
        prop_assert!(is_inner(&g, &compose(&g, &a, &b)).is_yes());
        prop_assert!(is_inner(&g, &commutator(&g, &a, &b)).is_yes());
    }
}

#[test]
fn generator_criteria_small() {
    let r = common::generator_criteria_suite(4, 50, 11);
    assert!(r.ok(), "{:?}", r.first_failure);
}
