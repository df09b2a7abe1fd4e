//! Laurence generators, explicit automorphisms and their action on special
//! subgroups.
//!
//! Automorphisms are stored as vertex → word maps together with an inverse
//! witness. Out-level equality is "differs by an inner automorphism", which
//! [`is_inner`] decides exactly.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, VSet};
use crate::orders::{domination, g_components, g_sub_v, rel_order};
use crate::peripheral::PeripheralPair;
use crate::words::{cyc_reduce, reduce, simultaneous_conjugator, GroupWord, Verdict};

/// The standard generators of `Out⁰` (plus graph symmetries).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LaurenceGenerator {
    /// `v ↦ v⁻¹`.
    Inversion(usize),
    /// `moved ↦ moved · acting`; needs `moved ≤ acting`.
    Transvection { moved: usize, acting: usize },
    /// `k ↦ acting · k · acting⁻¹` for `k ∈ K`, where `K` is a nonempty union
    /// of components of `Γ − st(acting)`.
    PartialConj { acting: usize, k: VSet },
    /// The graph automorphism `v ↦ perm[v]`.
    Symmetry(Vec<usize>),
}

impl LaurenceGenerator {
    fn rank(&self) -> u8 {
        match self {
            LaurenceGenerator::Inversion(_) => 0,
            LaurenceGenerator::Transvection { .. } => 1,
            LaurenceGenerator::PartialConj { .. } => 2,
            LaurenceGenerator::Symmetry(_) => 3,
        }
    }
}

impl PartialOrd for LaurenceGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurenceGenerator {
    fn cmp(&self, other: &Self) -> Ordering {
        use LaurenceGenerator::*;
        match (self, other) {
            (Inversion(a), Inversion(b)) => a.cmp(b),
            (Transvection { moved: m1, acting: a1 }, Transvection { moved: m2, acting: a2 }) => {
                (m1, a1).cmp(&(m2, a2))
            }
            (PartialConj { acting: a1, k: k1 }, PartialConj { acting: a2, k: k2 }) => {
                (a1, k1.first(), k1.0).cmp(&(a2, k2.first(), k2.0))
            }
            (Symmetry(p), Symmetry(q)) => p.cmp(q),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

/// An automorphism given on generators, with an inverse witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub forward: Vec<GroupWord>,
    pub backward: Vec<GroupWord>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        let id: Vec<GroupWord> = (0..n).map(GroupWord::letter).collect();
        Automorphism { forward: id.clone(), backward: id }
    }

    pub fn inverse(&self) -> Self {
        Automorphism { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    pub fn n(&self) -> usize {
        self.forward.len()
    }

    /// Conjugation `v ↦ c v c⁻¹`.
    pub fn inner(g: &DefiningGraph, c: &GroupWord) -> Self {
        let ci = c.inverse();
        Automorphism {
            forward: (0..g.n()).map(|v| reduce(g, &c.conjugate(&GroupWord::letter(v)))).collect(),
            backward: (0..g.n()).map(|v| reduce(g, &ci.conjugate(&GroupWord::letter(v)))).collect(),
        }
    }
}

fn substitute(images: &[GroupWord], w: &GroupWord) -> GroupWord {
    let mut out = Vec::new();
    for l in &w.0 {
        let img = &images[l.vertex()];
        if l.neg {
            out.extend(img.0.iter().rev().map(|x| x.inv()));
        } else {
            out.extend_from_slice(&img.0);
        }
    }
    GroupWord(out)
}

/// `φ(w)`, reduced.
pub fn apply(g: &DefiningGraph, phi: &Automorphism, w: &GroupWord) -> GroupWord {
    reduce(g, &substitute(&phi.forward, w))
}

/// `φ ∘ ψ` (apply `ψ` first).
pub fn compose(g: &DefiningGraph, phi: &Automorphism, psi: &Automorphism) -> Automorphism {
    Automorphism {
        forward: psi.forward.iter().map(|w| reduce(g, &substitute(&phi.forward, w))).collect(),
        backward: phi.backward.iter().map(|w| reduce(g, &substitute(&psi.backward, w))).collect(),
    }
}

/// `φ^k` for any integer `k`.
pub fn power(g: &DefiningGraph, phi: &Automorphism, k: i64) -> Automorphism {
    let base = if k < 0 { phi.inverse() } else { phi.clone() };
    let mut out = Automorphism::identity(g.n());
    for _ in 0..k.unsigned_abs() {
        out = compose(g, &base, &out);
    }
    out
}

/// `[φ, ψ] = φ ψ φ⁻¹ ψ⁻¹`.
pub fn commutator(g: &DefiningGraph, phi: &Automorphism, psi: &Automorphism) -> Automorphism {
    let a = compose(g, phi, psi);
    let b = compose(g, &phi.inverse(), &psi.inverse());
    compose(g, &a, &b)
}

impl LaurenceGenerator {
    /// Renames vertices through `map` (local index → global index). Graph
    /// symmetries are not transported.
    pub fn relabel(&self, map: &[usize]) -> Result<LaurenceGenerator> {
        Ok(match self {
            LaurenceGenerator::Inversion(v) => LaurenceGenerator::Inversion(map[*v]),
            LaurenceGenerator::Transvection { moved, acting } => {
                LaurenceGenerator::Transvection { moved: map[*moved], acting: map[*acting] }
            }
            LaurenceGenerator::PartialConj { acting, k } => LaurenceGenerator::PartialConj {
                acting: map[*acting],
                k: VSet::from_iter(k.iter().map(|v| map[v])),
            },
            LaurenceGenerator::Symmetry(_) => {
                return Err(Error::Contract("graph symmetries cannot be relabelled".into()))
            }
        })
    }

    /// Vertices whose image is not the vertex itself.
    pub fn moved_vertices(&self) -> VSet {
        match self {
            LaurenceGenerator::Inversion(v) => VSet::single(*v),
            LaurenceGenerator::Transvection { moved, .. } => VSet::single(*moved),
            LaurenceGenerator::PartialConj { k, .. } => *k,
            LaurenceGenerator::Symmetry(p) => {
                VSet::from_iter(p.iter().enumerate().filter(|(i, x)| *i != **x).map(|(i, _)| i))
            }
        }
    }
}

/// Checks the well-formedness conditions of a generator.
pub fn validate(g: &DefiningGraph, gen: &LaurenceGenerator) -> Result<()> {
    let n = g.n();
    let bad = |m: String| Err(Error::Input(m));
    match gen {
        LaurenceGenerator::Inversion(v) if *v < n => Ok(()),
        LaurenceGenerator::Transvection { moved, acting } if *moved < n && *acting < n => {
            if moved == acting {
                bad(format!("transvection of {} by itself", g.label(*moved)))
            } else if !g.link(*moved).is_subset(g.star(*acting)) {
                bad(format!("{} is not dominated by {}", g.label(*moved), g.label(*acting)))
            } else {
                Ok(())
            }
        }
        LaurenceGenerator::PartialConj { acting, k } if *acting < n => {
            let rest = g.all().minus(g.star(*acting));
            if k.is_empty() || !k.is_subset(rest) {
                return bad(format!(
                    "{} is not a nonempty subset of Γ − st({})",
                    g.fmt_set(*k),
                    g.label(*acting)
                ));
            }
            if g.components(rest).iter().any(|c| c.meets(*k) && !c.is_subset(*k)) {
                return bad(format!(
                    "{} is not a union of components of Γ − st({})",
                    g.fmt_set(*k),
                    g.label(*acting)
                ));
            }
            Ok(())
        }
        LaurenceGenerator::Symmetry(p) => {
            let mut seen = VSet::EMPTY;
            if p.len() != n || p.iter().any(|&x| x >= n) {
                return bad("symmetry is not a permutation of the vertices".into());
            }
            for &x in p {
                seen.insert(x);
            }
            if seen != g.all() {
                return bad("symmetry is not a bijection".into());
            }
            for (u, v) in g.edges() {
                if !g.adjacent(p[u], p[v]) {
                    return bad("symmetry does not preserve adjacency".into());
                }
            }
            Ok(())
        }
        _ => bad("generator refers to a vertex outside the graph".into()),
    }
}

/// Explicit automorphism for a generator.
pub fn realize(g: &DefiningGraph, gen: &LaurenceGenerator) -> Result<Automorphism> {
    validate(g, gen)?;
    let mut phi = Automorphism::identity(g.n());
    match gen {
        LaurenceGenerator::Inversion(v) => {
            phi.forward[*v] = GroupWord::letter(*v).inverse();
            phi.backward[*v] = GroupWord::letter(*v).inverse();
        }
        LaurenceGenerator::Transvection { moved, acting } => {
            let m = GroupWord::letter(*moved);
            let a = GroupWord::letter(*acting);
            phi.forward[*moved] = reduce(g, &m.concat(&a));
            phi.backward[*moved] = reduce(g, &m.concat(&a.inverse()));
        }
        LaurenceGenerator::PartialConj { acting, k } => {
            let a = GroupWord::letter(*acting);
            for v in k.iter() {
                let x = GroupWord::letter(v);
                phi.forward[v] = a.conjugate(&x);
                phi.backward[v] = a.inverse().conjugate(&x);
            }
        }
        LaurenceGenerator::Symmetry(p) => {
            let mut inv = vec![0; p.len()];
            for (v, &img) in p.iter().enumerate() {
                phi.forward[v] = GroupWord::letter(img);
                inv[img] = v;
            }
            for (v, &pre) in inv.iter().enumerate() {
                phi.backward[v] = GroupWord::letter(pre);
            }
        }
    }
    Ok(phi)
}

/// Exact innerness test. `Yes(c)` means `φ = ad(c)`.
pub fn is_inner(g: &DefiningGraph, phi: &Automorphism) -> Verdict<GroupWord> {
    acts_trivially_word(g, phi, g.all())
}

/// Word-level test that `φ` restricts to an inner automorphism on `A_Δ`,
/// i.e. some `c` has `φ(v) = c v c⁻¹` for every `v ∈ Δ`.
pub fn acts_trivially_word(g: &DefiningGraph, phi: &Automorphism, delta: VSet) -> Verdict<GroupWord> {
    let targets: Vec<(usize, GroupWord)> = delta.iter().map(|v| (v, phi.forward[v].clone())).collect();
    match simultaneous_conjugator(g, &targets) {
        Some(c) => Verdict::Yes(c),
        None => Verdict::No,
    }
}

/// Drops every letter outside `Δ` (the retraction `A_Γ → A_Δ`).
fn retract(g: &DefiningGraph, w: &GroupWord, delta: VSet) -> GroupWord {
    reduce(g, &GroupWord(w.0.iter().copied().filter(|l| delta.contains(l.vertex())).collect()))
}

/// One direction of the preservation test: if `φ(A_Δ)` is conjugate to
/// `A_Δ` then `v ↦ φ(r(φ⁻¹(v)))` is a conjugation on `A_Δ`, where `r` is the
/// retraction onto `A_Δ`.
fn preserves_one_way(g: &DefiningGraph, phi: &Automorphism, delta: VSet) -> bool {
    for v in delta.iter() {
        let (core, _) = cyc_reduce(g, &phi.forward[v]);
        if !core.letters_set().is_subset(delta) {
            return false;
        }
    }
    let targets: Vec<(usize, GroupWord)> = delta
        .iter()
        .map(|v| {
            let chi = retract(g, &phi.backward[v], delta);
            (v, apply(g, phi, &chi))
        })
        .collect();
    simultaneous_conjugator(g, &targets).is_some()
}

/// Word-level test that `φ(A_Δ)` is conjugate to `A_Δ`.
pub fn preserves_word(g: &DefiningGraph, phi: &Automorphism, delta: VSet) -> bool {
    if delta.is_empty() || delta == g.all() {
        return true;
    }
    preserves_one_way(g, phi, delta) && preserves_one_way(g, &phi.inverse(), delta)
}

/// Closed-form: does the generator act on `A_Δ` as an inner automorphism?
pub fn acts_trivially_on(g: &DefiningGraph, gen: &LaurenceGenerator, delta: VSet) -> bool {
    match gen {
        LaurenceGenerator::Inversion(v) => !delta.contains(*v),
        LaurenceGenerator::Transvection { moved, .. } => !delta.contains(*moved),
        LaurenceGenerator::PartialConj { acting, k } => pc_condition(g, *acting, *k, delta),
        LaurenceGenerator::Symmetry(p) => delta.iter().all(|v| p[v] == v),
    }
}

/// Closed-form: does the generator send `A_Δ` to a conjugate of itself?
pub fn preserves(g: &DefiningGraph, gen: &LaurenceGenerator, delta: VSet) -> bool {
    match gen {
        LaurenceGenerator::Inversion(_) => true,
        LaurenceGenerator::Transvection { moved, acting } => {
            !delta.contains(*moved) || delta.contains(*acting)
        }
        LaurenceGenerator::PartialConj { acting, k } => {
            delta.contains(*acting) || pc_condition(g, *acting, *k, delta)
        }
        LaurenceGenerator::Symmetry(p) => VSet::from_iter(delta.iter().map(|v| p[v])) == delta,
    }
}

/// `K ∩ Δ = ∅` or `Δ − st(x) ⊆ K`.
fn pc_condition(g: &DefiningGraph, x: usize, k: VSet, delta: VSet) -> bool {
    !k.meets(delta) || delta.minus(g.star(x)).is_subset(k)
}

/// Membership of a generator in `Out⁰(A_Γ; 𝒢, ℋᵗ)`; the pair must be
/// normalized.
pub fn gen_in_relative(g: &DefiningGraph, gen: &LaurenceGenerator, pp: &PeripheralPair) -> Result<bool> {
    if !pp.normalized {
        return Err(Error::Contract("peripheral pair must be normalized".into()));
    }
    validate(g, gen)?;
    Ok(match gen {
        LaurenceGenerator::Inversion(v) => !pp.h.iter().any(|d| d.contains(*v)),
        LaurenceGenerator::Transvection { moved, acting } => {
            rel_order(g, &pp.g).leq(*moved, *acting)
        }
        LaurenceGenerator::PartialConj { acting, k } => {
            let rest = g.all().minus(g.star(*acting));
            let gv = g_sub_v(&pp.g, *acting);
            g_components(g, rest, &gv).iter().all(|c| !c.meets(*k) || c.is_subset(*k))
        }
        LaurenceGenerator::Symmetry(p) => {
            pp.g.iter().all(|d| preserves(g, gen, *d))
                && pp.h.iter().all(|d| d.iter().all(|v| p[v] == v))
        }
    })
}

/// Generating set for `Out⁰(A_Γ; 𝒢, ℋᵗ)`: admissible inversions and
/// transvections, and one partial conjugation per 𝒢^v-component of
/// `Γ − st(v)` except the largest (least index on ties), whose conjugation
/// is a product of the others modulo inner automorphisms.
pub fn enumerate_generators(g: &DefiningGraph, pp: &PeripheralPair) -> Result<Vec<LaurenceGenerator>> {
    if !pp.normalized {
        return Err(Error::Contract("peripheral pair must be normalized".into()));
    }
    let n = g.n();
    let rel = rel_order(g, &pp.g);
    let mut out = Vec::new();
    for v in 0..n {
        if !pp.h.iter().any(|d| d.contains(v)) {
            out.push(LaurenceGenerator::Inversion(v));
        }
    }
    for moved in 0..n {
        for acting in 0..n {
            if moved != acting && rel.leq(moved, acting) {
                out.push(LaurenceGenerator::Transvection { moved, acting });
            }
        }
    }
    for acting in 0..n {
        let rest = g.all().minus(g.star(acting));
        let comps = g_components(g, rest, &g_sub_v(&pp.g, acting));
        if comps.len() < 2 {
            continue;
        }
        let skip = comps
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap();
        for (i, c) in comps.iter().enumerate() {
            if i != skip {
                out.push(LaurenceGenerator::PartialConj { acting, k: *c });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// For each vertex class, the class containing a ≤-minimal vertex of
/// `crsupp(φ(v))` for a representative `v`. The identity on classes
/// characterises `Out⁰`.
pub fn class_action(g: &DefiningGraph, phi: &Automorphism) -> Result<Vec<usize>> {
    let d = domination(g);
    let mut out = Vec::with_capacity(d.classes.len());
    for c in &d.classes {
        let v = c.first().unwrap();
        let s = cyc_reduce(g, &phi.forward[v]).0.letters_set();
        let min = s
            .iter()
            .find(|&u| s.iter().all(|w| d.leq(u, w)))
            .ok_or_else(|| Error::Internal(format!("no minimal vertex in crsupp of φ({})", g.label(v))))?;
        out.push(d.class_of[min]);
    }
    Ok(out)
}

pub fn out0_membership(g: &DefiningGraph, phi: &Automorphism) -> Result<bool> {
    Ok(class_action(g, phi)?.iter().enumerate().all(|(i, &c)| i == c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peripheral::{normalize, NormalizeMode};
    use LaurenceGenerator::*;

    fn p3() -> DefiningGraph {
        DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn empty_pp(g: &DefiningGraph) -> PeripheralPair {
        normalize(g, &PeripheralPair::new(vec![], vec![]), NormalizeMode::Weak).unwrap()
    }

    #[test]
    fn p3_generators() {
        let g = p3();
        let gens = enumerate_generators(&g, &empty_pp(&g)).unwrap();
        let expect = vec![
            Inversion(0),
            Inversion(1),
            Inversion(2),
            Transvection { moved: 0, acting: 1 },
            Transvection { moved: 0, acting: 2 },
            Transvection { moved: 2, acting: 0 },
            Transvection { moved: 2, acting: 1 },
        ];
        assert_eq!(gens, expect);
    }

    #[test]
    fn complete_and_free_generators() {
        let k3 = DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(enumerate_generators(&k3, &empty_pp(&k3)).unwrap().len(), 3 + 6);
        let f2 = DefiningGraph::new(&["u", "v"], &[]).unwrap();
        let gens = enumerate_generators(&f2, &empty_pp(&f2)).unwrap();
        assert_eq!(gens.len(), 4);
        assert!(gens.iter().all(|x| !matches!(x, PartialConj { .. })));
    }

    #[test]
    fn realize_and_compose() {
        let g = p3();
        let t = realize(&g, &Transvection { moved: 0, acting: 1 }).unwrap();
        let id = compose(&g, &t, &t.inverse());
        assert_eq!(id, Automorphism::identity(3));
        assert!(realize(&g, &Transvection { moved: 1, acting: 0 }).is_err());
    }

    #[test]
    fn inner_examples() {
        let g = p3();
        let pc = realize(&g, &PartialConj { acting: 0, k: VSet::single(2) }).unwrap();
        match is_inner(&g, &pc) {
            Verdict::Yes(c) => assert_eq!(c, GroupWord::letter(0)),
            other => panic!("expected inner, got {other:?}"),
        }
        let f2 = DefiningGraph::new(&["u", "v"], &[]).unwrap();
        let pc = realize(&f2, &PartialConj { acting: 0, k: VSet::single(1) }).unwrap();
        assert!(is_inner(&f2, &pc).is_yes());
        let twisted = compose(&f2, &pc, &realize(&f2, &Inversion(0)).unwrap());
        assert_eq!(is_inner(&f2, &twisted), Verdict::No);
    }

    #[test]
    fn preservation_counterexample() {
        // edgeless {x,u,v}: π^x_{u} does not preserve ⟨u,v⟩
        let g = DefiningGraph::new(&["x", "u", "v"], &[]).unwrap();
        let gen = PartialConj { acting: 0, k: VSet::single(1) };
        let delta = VSet::from_iter([1, 2]);
        assert!(!preserves(&g, &gen, delta));
        assert!(!preserves_word(&g, &realize(&g, &gen).unwrap(), delta));
        assert!(preserves_word(&g, &realize(&g, &gen).unwrap(), VSet::single(1)));
    }

    #[test]
    fn class_action_of_generators() {
        let g = p3();
        for gen in enumerate_generators(&g, &empty_pp(&g)).unwrap() {
            assert!(out0_membership(&g, &realize(&g, &gen).unwrap()).unwrap());
        }
        let swap = realize(&g, &Symmetry(vec![2, 1, 0])).unwrap();
        assert!(out0_membership(&g, &swap).unwrap());
    }
}
