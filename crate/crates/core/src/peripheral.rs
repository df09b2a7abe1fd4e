//! Peripheral pairs `(𝒢, ℋ)`: normalization, invariance, saturation,
//! induced structures, the cheap `𝒫_Δ` collection, cone graphs and the
//! untwisted periphery.

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, VSet};
use crate::orders::{a_geq, g_components, g_sub_v, n_g, rel_order};

/// Subgroups to preserve up to conjugacy (`g`) and to act on by inner
/// automorphisms (`h`). Member lists are kept sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PeripheralPair {
    pub g: Vec<VSet>,
    pub h: Vec<VSet>,
    pub normalized: bool,
    pub saturated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NormalizeMode {
    /// Add `ℋ` and every `Δ − {v}` for `Δ ∈ ℋ`.
    #[default]
    Weak,
    /// Add every nonempty subset of every member of `ℋ`.
    Full,
}

fn tidy(v: &mut Vec<VSet>) {
    v.retain(|s| !s.is_empty());
    v.sort();
    v.dedup();
}

impl PeripheralPair {
    pub fn new(g: Vec<VSet>, h: Vec<VSet>) -> Self {
        let mut pp = PeripheralPair { g, h, normalized: false, saturated: false };
        tidy(&mut pp.g);
        tidy(&mut pp.h);
        pp
    }

    pub fn empty() -> Self {
        PeripheralPair { normalized: true, ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty() && self.h.is_empty()
    }

    fn check_proper(&self, g: &DefiningGraph) -> Result<()> {
        for s in self.g.iter().chain(&self.h) {
            if !s.is_subset(g.all()) {
                return Err(Error::Input("peripheral member is not a subgraph".into()));
            }
            if *s == g.all() {
                return Err(Error::Input(
                    "peripheral members must be proper special subgroups".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Closes `𝒢` under the ℋ-subsets required by the chosen mode. This does
/// not change the group the pair describes.
pub fn normalize(g: &DefiningGraph, pp: &PeripheralPair, mode: NormalizeMode) -> Result<PeripheralPair> {
    pp.check_proper(g)?;
    let mut out = PeripheralPair::new(pp.g.clone(), pp.h.clone());
    for &d in &pp.h {
        out.g.push(d);
        match mode {
            NormalizeMode::Weak => out.g.extend(d.iter().map(|v| d.without(v))),
            NormalizeMode::Full => {
                // all nonempty subsets of d
                let m = d.len();
                if m > 20 {
                    return Err(Error::Capability(format!(
                        "full normalization of a {m}-vertex member; use weak mode"
                    )));
                }
                for mask in 1u64..(1u64 << m) {
                    out.g.push(VSet(mask).expand(d));
                }
            }
        }
    }
    tidy(&mut out.g);
    out.normalized = true;
    Ok(out)
}

/// Precomputed separation data: for each vertex `x`, the 𝒢^x-components of
/// `Γ − st(x)`.
struct Separation {
    comps: Vec<Vec<VSet>>,
    up: Vec<VSet>,
}

impl Separation {
    fn new(g: &DefiningGraph, pp: &PeripheralPair) -> Self {
        let rel = rel_order(g, &pp.g);
        let comps = (0..g.n())
            .map(|x| g_components(g, g.all().minus(g.star(x)), &g_sub_v(&pp.g, x)))
            .collect();
        Separation { comps, up: rel.up }
    }

    fn invariant(&self, n: usize, delta: VSet) -> bool {
        if delta.iter().any(|u| !self.up[u].is_subset(delta)) {
            return false;
        }
        VSet::full(n)
            .minus(delta)
            .iter()
            .all(|x| self.comps[x].iter().filter(|c| c.meets(delta)).count() <= 1)
    }
}

/// Whether `A_Δ` is invariant under `Out⁰(A_Γ; 𝒢, ℋᵗ)`: `Δ` is upwards
/// closed under `≤_𝒢` and no outside vertex 𝒢-star-separates it.
pub fn is_invariant(g: &DefiningGraph, pp: &PeripheralPair, delta: VSet) -> Result<bool> {
    if !pp.normalized {
        return Err(Error::Contract("peripheral pair must be normalized".into()));
    }
    Ok(Separation::new(g, pp).invariant(g.n(), delta))
}

pub const SATURATE_CAP: usize = 20;

/// Adds every proper invariant special subgroup to `𝒢`. One pass suffices:
/// adding invariant subgroups does not change the group.
pub fn saturate(g: &DefiningGraph, pp: &PeripheralPair) -> Result<PeripheralPair> {
    if !pp.normalized {
        return Err(Error::Contract("peripheral pair must be normalized".into()));
    }
    let n = g.n();
    if n > SATURATE_CAP {
        return Err(Error::Capability(format!(
            "saturation scans all subgraphs and is capped at {SATURATE_CAP} vertices \
             (graph has {n}); use the fast peripheral mode"
        )));
    }
    let sep = Separation::new(g, pp);
    let mut out = pp.clone();
    let full = (1u64 << n) - 1;
    for mask in 1..full {
        let d = VSet(mask);
        if sep.invariant(n, d) {
            out.g.push(d);
        }
    }
    tidy(&mut out.g);
    out.saturated = true;
    Ok(out)
}

/// `(𝒢_Δ, ℋ_Δ)`: nonempty intersections with `Δ` other than `Δ` itself.
/// Members stay in the indexing of `Γ`.
pub fn induced(pp: &PeripheralPair, delta: VSet) -> PeripheralPair {
    let cut = |v: &[VSet]| -> Vec<VSet> {
        v.iter().map(|s| s.inter(delta)).filter(|s| *s != delta).collect()
    };
    let mut out = PeripheralPair::new(cut(&pp.g), cut(&pp.h));
    out.normalized = pp.normalized;
    out
}

/// Re-indexes a pair on `Δ` to the dense vertex numbering of `Γ[Δ]`.
pub fn compress(pp: &PeripheralPair, delta: VSet) -> PeripheralPair {
    let c = |v: &[VSet]| v.iter().map(|s| s.inter(delta).compress(delta)).collect();
    let mut out = PeripheralPair::new(c(&pp.g), c(&pp.h));
    out.normalized = pp.normalized;
    out.saturated = pp.saturated;
    out
}

/// The collection `𝒫_Δ`, which together with `𝒢_Δ` gives the exact image of
/// the restriction map to `Δ ∈ 𝒢` without saturating.
pub fn fast_periphery(g: &DefiningGraph, pp: &PeripheralPair, delta: VSet) -> Result<Vec<VSet>> {
    if !pp.normalized {
        return Err(Error::Contract("peripheral pair must be normalized".into()));
    }
    if !pp.g.contains(&delta) {
        return Err(Error::Contract(format!("{} is not a member of 𝒢", g.fmt_set(delta))));
    }
    let mut out = Vec::new();
    for x in g.all().minus(delta).iter() {
        out.push(g.link(x).inter(delta));
    }
    for x in delta.iter() {
        let gx = g_sub_v(&pp.g, x);
        let outside = g.all().minus(g.star(x)).minus(delta);
        for theta in g_components(g, outside, &gx) {
            out.push(n_g(g, theta, &gx).inter(delta));
        }
    }
    out.retain(|s| !s.is_empty() && *s != delta);
    out.sort();
    out.dedup();
    Ok(out)
}

/// Γ coned off twice: a vertex `v_Δ` with link `Δ` for each `Δ ∈ 𝒢 ∪ {Γ}`,
/// and `v_*` with link `Γ`. New vertices take labels not used by `Γ`.
pub fn cone_graph(g: &DefiningGraph, members: &[VSet]) -> DefiningGraph {
    let n = g.n();
    let mut labels: Vec<String> = g.labels().to_vec();
    let mut links: Vec<VSet> = members.to_vec();
    links.push(g.all());
    let fresh = |base: String, labels: &mut Vec<String>| {
        let mut l = base;
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    };
    for i in 0..links.len() {
        let name = if i + 1 == links.len() { "v_G".to_string() } else { format!("v_{i}") };
        fresh(name, &mut labels);
    }
    fresh("v_star".to_string(), &mut labels);
    links.push(g.all());
    let total = labels.len();
    let mut adj: Vec<VSet> = (0..n).map(|v| g.link(v)).collect();
    adj.resize(total, VSet::EMPTY);
    for (i, l) in links.iter().enumerate() {
        let c = n + i;
        for v in l.iter() {
            adj[c].insert(v);
            adj[v].insert(c);
        }
    }
    DefiningGraph::from_adjacency(labels, adj)
}

/// The proper subgraphs `A^NA_{≥v}`: `v` together with the vertices
/// dominating it that it does not commute with.
pub fn untwisted_periphery(g: &DefiningGraph) -> Vec<VSet> {
    let mut out: Vec<VSet> = (0..g.n())
        .map(|v| a_geq(g, v).minus(g.link(v)))
        .filter(|s| *s != g.all())
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> DefiningGraph {
        DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn weak_and_full_normalization() {
        let g = DefiningGraph::new(&["a", "b", "c", "d"], &[]).unwrap();
        let ab = VSet::from_iter([0, 1]);
        let pp = normalize(&g, &PeripheralPair::new(vec![], vec![ab]), NormalizeMode::Weak).unwrap();
        assert_eq!(pp.g, vec![VSet::single(0), VSet::single(1), ab]);
        let abc = VSet::from_iter([0, 1, 2]);
        let pp = normalize(&g, &PeripheralPair::new(vec![], vec![abc]), NormalizeMode::Full).unwrap();
        assert_eq!(pp.g.len(), 7);
        assert!(normalize(&g, &PeripheralPair::new(vec![g.all()], vec![]), NormalizeMode::Weak).is_err());
    }

    #[test]
    fn p3_saturation() {
        let g = p3();
        // a ~ c, so neither ⟨a,b⟩ nor ⟨b,c⟩ is upwards closed: a ↦ ac moves ⟨a,b⟩
        let sat = saturate(&g, &PeripheralPair::empty()).unwrap();
        assert_eq!(sat.g, vec![VSet::single(1)]);
        assert_eq!(saturate(&g, &sat).unwrap().g, sat.g);
        let t = crate::autos::realize(
            &g,
            &crate::autos::LaurenceGenerator::Transvection { moved: 0, acting: 2 },
        )
        .unwrap();
        assert!(!crate::autos::preserves_word(&g, &t, VSet::from_iter([0, 1])));
    }

    #[test]
    fn free_group_has_no_invariants() {
        let g = DefiningGraph::new(&["u", "v"], &[]).unwrap();
        assert!(saturate(&g, &PeripheralPair::empty()).unwrap().g.is_empty());
    }

    #[test]
    fn cone_graph_sizes() {
        let g = DefiningGraph::new(&["x", "y", "z"], &[]).unwrap();
        let c = cone_graph(&g, &[VSet::from_iter([0, 1])]);
        assert_eq!(c.n(), 6);
        assert_eq!(c.link(3), VSet::from_iter([0, 1]));
        assert_eq!(c.link(4), VSet::from_iter([0, 1, 2]));
        assert_eq!(c.link(5), VSet::from_iter([0, 1, 2]));
    }

    #[test]
    fn untwisted_examples() {
        let g = p3();
        assert_eq!(untwisted_periphery(&g), vec![VSet::single(1), VSet::from_iter([0, 2])]);
        let k3 = DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(untwisted_periphery(&k3).len(), 3);
        let e = DefiningGraph::new(&["a", "b", "c"], &[]).unwrap();
        assert!(untwisted_periphery(&e).is_empty());
    }

    #[test]
    fn induced_drops_self_and_empty() {
        let d = VSet::from_iter([0, 1]);
        let pp = PeripheralPair::new(vec![d, VSet::from_iter([1, 2]), VSet::single(2)], vec![]);
        assert_eq!(induced(&pp, d).g, vec![VSet::single(1)]);
    }
}
