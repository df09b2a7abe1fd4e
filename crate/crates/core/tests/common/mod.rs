//! Random inputs and the randomized suites shared by the property tests and
//! the acceptance harness. Each suite returns a summary and the first
//! counterexample it met.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raagout_core::autos::{
    acts_trivially_on, acts_trivially_word, enumerate_generators, gen_in_relative, preserves,
    preserves_word, realize,
};
use raagout_core::decompose::{check_exactness, restriction_step, Descriptor, RestrictMode};
use raagout_core::peripheral::{is_invariant, normalize, saturate};
use raagout_core::words::{crsupp, reduce};
use raagout_core::{DefiningGraph, GroupWord, LaurenceGenerator, Letter, NormalizeMode, PeripheralPair, VSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

pub fn graph_from_mask(n: usize, mask: u64) -> DefiningGraph {
    let mut adj = vec![VSet::EMPTY; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            bit += 1;
        }
    }
    DefiningGraph::from_adjacency(labels(n), adj)
}

pub fn random_graph(r: &mut ChaCha8Rng, n: usize) -> DefiningGraph {
    let p: f64 = r.gen_range(0.2..0.8);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut mask = 0u64;
    for b in 0..pairs {
        if r.gen_bool(p) {
            mask |= 1 << b;
        }
    }
    graph_from_mask(n, mask)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs on
/// `1..=max_n` vertices.
pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<DefiningGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
        let perms = permutations(n);
        let mut seen = std::collections::HashSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let canon = perms
                .iter()
                .map(|p| {
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .fold(0u64, |acc, (_, &(i, j))| acc | 1 << index(p[i], p[j]))
                })
                .min()
                .unwrap();
            if !seen.insert(canon) {
                continue;
            }
            let g = graph_from_mask(n, canon);
            if g.is_connected(g.all()) {
                out.push(g);
            }
        }
    }
    out
}

pub fn random_proper_subset(r: &mut ChaCha8Rng, n: usize) -> VSet {
    loop {
        let s = VSet(r.gen_range(1..(1u64 << n)));
        if s != VSet::full(n) || n == 1 {
            return s;
        }
    }
}

/// A random weakly normalized pair with up to three members in `𝒢` and two
/// in `ℋ`.
pub fn random_pair(r: &mut ChaCha8Rng, g: &DefiningGraph) -> PeripheralPair {
    let n = g.n();
    if n < 2 {
        return PeripheralPair::empty();
    }
    let gg = (0..r.gen_range(0..=3)).map(|_| random_proper_subset(r, n)).collect();
    let hh = (0..r.gen_range(0..=2)).map(|_| random_proper_subset(r, n)).collect();
    normalize(g, &PeripheralPair::new(gg, hh), NormalizeMode::Weak).expect("proper members")
}

/// Inversions, all transvections and partial conjugations by each vertex on
/// every nonempty union of components of `Γ − st(x)`.
pub fn candidate_generators(g: &DefiningGraph) -> Vec<LaurenceGenerator> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        out.push(LaurenceGenerator::Inversion(v));
        for a in 0..g.n() {
            let t = LaurenceGenerator::Transvection { moved: v, acting: a };
            if raagout_core::autos::validate(g, &t).is_ok() {
                out.push(t);
            }
        }
        let comps = g.components(g.all().minus(g.star(v)));
        for pick in 1u64..(1 << comps.len()) {
            let k = comps
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .fold(VSet::EMPTY, |a, (_, c)| a.union(*c));
            out.push(LaurenceGenerator::PartialConj { acting: v, k });
        }
    }
    out
}

#[derive(Debug, Default)]
pub struct SuiteResult {
    pub checks: usize,
    pub failures: usize,
    pub inconclusive: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg());
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0 && self.inconclusive == 0
    }
}

/// Closed-form membership and action criteria against word-level checks.
pub fn generator_criteria_suite(max_n: usize, pairs_per_graph: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    let mut res = SuiteResult::default();
    for g in connected_graphs_up_to_iso(max_n) {
        let cands = candidate_generators(&g);
        let autos: Vec<_> = cands.iter().map(|c| realize(&g, c).unwrap()).collect();
        // single-subgraph criteria, exhaustively
        for bits in 1..(1u64 << g.n()) {
            let delta = VSet(bits);
            for (gen, phi) in cands.iter().zip(&autos) {
                res.checks += 2;
                if preserves(&g, gen, delta) != preserves_word(&g, phi, delta) {
                    res.fail(|| format!("{:?}: preserves disagrees on {gen:?}, Δ={delta:?}", g.edges()));
                }
                let w = acts_trivially_word(&g, phi, delta);
                if w.is_yes() == w.is_no() {
                    res.inconclusive += 1;
                } else if acts_trivially_on(&g, gen, delta) != w.is_yes() {
                    res.fail(|| format!("{:?}: acts trivially disagrees on {gen:?}, Δ={delta:?}", g.edges()));
                }
            }
        }
        for _ in 0..pairs_per_graph {
            let pp = random_pair(&mut r, &g);
            for (gen, phi) in cands.iter().zip(&autos) {
                res.checks += 1;
                let oracle = pp.g.iter().all(|&d| preserves_word(&g, phi, d))
                    && pp.h.iter().all(|&d| acts_trivially_word(&g, phi, d).is_yes());
                if gen_in_relative(&g, gen, &pp).unwrap() != oracle {
                    res.fail(|| format!("{:?}: {gen:?} with 𝒢={:?} ℋ={:?}: oracle says {oracle}", g.edges(), pp.g, pp.h));
                }
            }
        }
    }
    res
}

/// `is_invariant` against "every generator preserves Δ", and closure of
/// invariant subgraphs under intersection.
pub fn invariance_suite(graphs: usize, intersections: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    let mut res = SuiteResult::default();
    let mut pairs_done = 0;
    let mut graphs_done = 0;
    while graphs_done < graphs || pairs_done < intersections {
        let n = r.gen_range(2..=6);
        let g = random_graph(&mut r, n);
        let pp = random_pair(&mut r, &g);
        let gens: Vec<_> = enumerate_generators(&g, &pp).unwrap().iter().map(|x| realize(&g, x).unwrap()).collect();
        let mut invariant = Vec::new();
        for bits in 1..(1u64 << n) - 1 {
            let delta = VSet(bits);
            let fast = is_invariant(&g, &pp, delta).unwrap();
            let oracle = gens.iter().all(|phi| preserves_word(&g, phi, delta));
            res.checks += 1;
            if fast != oracle {
                res.fail(|| format!("{:?} 𝒢={:?} ℋ={:?} Δ={delta:?}: oracle says {oracle}", g.edges(), pp.g, pp.h));
            }
            if fast {
                invariant.push(delta);
            }
        }
        graphs_done += 1;
        if invariant.len() >= 2 && pairs_done < intersections {
            for _ in 0..10.min(intersections - pairs_done) {
                let a = *invariant.choose(&mut r).unwrap();
                let b = *invariant.choose(&mut r).unwrap();
                let c = a.inter(b);
                pairs_done += 1;
                res.checks += 1;
                if !c.is_empty() && !is_invariant(&g, &pp, c).unwrap() {
                    res.fail(|| format!("{:?}: {a:?} ∩ {b:?} not invariant", g.edges()));
                }
            }
        }
    }
    res
}

/// Lifts of image generators restrict correctly and kernel generators act
/// trivially, on random saturated descriptors.
pub fn exactness_suite(descriptors: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    let mut res = SuiteResult::default();
    let mut done = 0;
    let mut attempts = 0;
    while done < descriptors && attempts < 100 * descriptors {
        attempts += 1;
        let n = r.gen_range(3..=6);
        let g = random_graph(&mut r, n);
        let pp = random_pair(&mut r, &g);
        let sat = saturate(&g, &pp).unwrap();
        let d = Descriptor::new(g.clone(), sat.clone()).unwrap();
        let mut members = sat.g.clone();
        members.shuffle(&mut r);
        let Some(step) = members.iter().find_map(|&delta| restriction_step(&d, delta, RestrictMode::Saturated).ok())
        else {
            continue;
        };
        done += 1;
        let rep = check_exactness(&step).unwrap();
        for (gen, lift, ok) in &rep.lifts {
            res.checks += 1;
            if !ok {
                res.fail(|| format!("{:?} Δ={:?}: image generator {gen:?} lifted to {lift:?}", g.edges(), step.target));
            }
        }
        for (gen, ok) in &rep.kernel {
            res.checks += 1;
            if !ok {
                res.fail(|| format!("{:?} Δ={:?}: kernel generator {gen:?}", g.edges(), step.target));
            }
        }
    }
    if done < descriptors {
        res.fail(|| format!("only {done} descriptors with a nontrivial restriction found"));
    }
    res
}

pub fn random_word(r: &mut ChaCha8Rng, n: usize, len: usize) -> GroupWord {
    GroupWord(
        (0..len)
            .map(|_| Letter { v: r.gen_range(0..n) as u16, neg: r.gen_bool(0.5) })
            .collect(),
    )
}

/// Reduction is idempotent, does not lengthen, and ignores swaps of
/// adjacent commuting letters; `crsupp` is conjugation invariant.
pub fn normal_form_suite(rewrites: usize, conjugations: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    let mut res = SuiteResult::default();
    let mut g = random_graph(&mut r, 6);
    let mut w = random_word(&mut r, 6, 12);
    let mut base = reduce(&g, &w);
    for i in 0..rewrites {
        if i % 1000 == 0 {
            let n = r.gen_range(2..=8);
            g = random_graph(&mut r, n);
            let len = r.gen_range(0..20);
            w = random_word(&mut r, n, len);
            base = reduce(&g, &w);
            res.checks += 2;
            if reduce(&g, &base) != base || base.len() > w.len() {
                res.fail(|| format!("{:?}: reduce of {w:?} not idempotent or longer", g.edges()));
            }
        }
        if w.len() < 2 {
            continue;
        }
        let j = r.gen_range(0..w.len() - 1);
        let (a, b) = (w.0[j].vertex(), w.0[j + 1].vertex());
        if a != b && g.adjacent(a, b) {
            w.0.swap(j, j + 1);
        } else if r.gen_bool(0.1) {
            // inserting a cancelling pair is also a rewrite of the same element
            let v = r.gen_range(0..g.n());
            w.0.insert(j, Letter::neg(v));
            w.0.insert(j, Letter::pos(v));
        }
        res.checks += 1;
        if reduce(&g, &w) != base {
            res.fail(|| format!("{:?}: rewrite {w:?} changed the normal form {base:?}", g.edges()));
        }
    }
    for _ in 0..conjugations {
        let n = r.gen_range(1..=8);
        let g = random_graph(&mut r, n);
        let (lx, lc) = (r.gen_range(0..15), r.gen_range(0..10));
        let x = random_word(&mut r, n, lx);
        let c = random_word(&mut r, n, lc);
        res.checks += 1;
        if crsupp(&g, &c.conjugate(&x)) != crsupp(&g, &x) {
            res.fail(|| format!("{:?}: crsupp changes under conjugating {x:?} by {c:?}", g.edges()));
        }
    }
    res
}
