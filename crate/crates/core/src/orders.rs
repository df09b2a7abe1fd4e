//! The domination order, vertex classes, the vertex class graph and the
//! relative (𝒢-) order with its adjacency and components.

use crate::graph::{DefiningGraph, VSet};

/// `u ≤ v` iff `lk(u) ⊆ st(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationOrder {
    /// `up[u]` is the set of `v` with `u ≤ v`.
    pub up: Vec<VSet>,
    /// Equivalence classes, ordered by least member.
    pub classes: Vec<VSet>,
    /// Index into `classes` for each vertex.
    pub class_of: Vec<usize>,
}

impl DominationOrder {
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.up[u].contains(v)
    }

    pub fn equiv(&self, u: usize, v: usize) -> bool {
        self.leq(u, v) && self.leq(v, u)
    }

    pub fn class(&self, v: usize) -> VSet {
        self.classes[self.class_of[v]]
    }

    /// Classes not strictly dominated by another class.
    pub fn maximal_classes(&self) -> Vec<VSet> {
        self.classes
            .iter()
            .copied()
            .filter(|c| {
                let v = c.first().unwrap();
                self.up[v] == *c
            })
            .collect()
    }
}

pub fn domination(g: &DefiningGraph) -> DominationOrder {
    let n = g.n();
    let up: Vec<VSet> = (0..n)
        .map(|u| VSet::from_iter((0..n).filter(|&v| g.link(u).is_subset(g.star(v)))))
        .collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for u in 0..n {
        if class_of[u] != usize::MAX {
            continue;
        }
        let c = VSet::from_iter(up[u].iter().filter(|&v| up[v].contains(u)));
        for v in c.iter() {
            class_of[v] = classes.len();
        }
        classes.push(c);
    }
    DominationOrder { up, classes, class_of }
}

/// `{w : v ≤ w}`.
pub fn a_geq(g: &DefiningGraph, v: usize) -> VSet {
    VSet::from_iter((0..g.n()).filter(|&w| g.link(v).is_subset(g.star(w))))
}

/// `{w : v ≤ w, w ≁ v}`.
pub fn a_gt(g: &DefiningGraph, v: usize) -> VSet {
    let star_v = g.star(v);
    VSet::from_iter(a_geq(g, v).iter().filter(|&w| !g.link(w).is_subset(star_v)))
}

/// One node per vertex class; colour `(size, 0)` for abelian classes and
/// `(size, 1)` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassGraph {
    pub classes: Vec<VSet>,
    /// Adjacency between class indices.
    pub adjacency: Vec<VSet>,
    pub coloring: Vec<(usize, u8)>,
}

impl VertexClassGraph {
    /// Name of class `i`: the label of its least member.
    pub fn name<'a>(&self, g: &'a DefiningGraph, i: usize) -> &'a str {
        g.label(self.classes[i].first().unwrap())
    }
}

pub fn vertex_class_graph(g: &DefiningGraph) -> VertexClassGraph {
    let d = domination(g);
    let classes = d.classes.clone();
    let adjacency = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let rep = c.first().unwrap();
            VSet::from_iter(
                (0..classes.len()).filter(|&j| j != i && g.adjacent(rep, classes[j].first().unwrap())),
            )
        })
        .collect();
    let coloring = classes
        .iter()
        .map(|&c| (c.len(), if g.is_complete(c) { 0 } else { 1 }))
        .collect();
    VertexClassGraph { classes, adjacency, coloring }
}

/// The 𝒢-ordering: `u ≤_𝒢 v` iff `u ≤ v` and every member of 𝒢 containing
/// `u` contains `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelOrder {
    pub base: DominationOrder,
    pub up: Vec<VSet>,
}

impl RelOrder {
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.up[u].contains(v)
    }
}

pub fn rel_order(g: &DefiningGraph, members: &[VSet]) -> RelOrder {
    let base = domination(g);
    let up = (0..g.n())
        .map(|u| {
            members
                .iter()
                .filter(|m| m.contains(u))
                .fold(base.up[u], |acc, m| acc.inter(*m))
        })
        .collect();
    RelOrder { base, up }
}

/// Adjacent, or both in some member.
pub fn g_adjacent(g: &DefiningGraph, u: usize, v: usize, members: &[VSet]) -> bool {
    u != v && (g.adjacent(u, v) || members.iter().any(|m| m.contains(u) && m.contains(v)))
}

/// The members not containing `v`.
pub fn g_sub_v(members: &[VSet], v: usize) -> Vec<VSet> {
    members.iter().copied().filter(|m| !m.contains(v)).collect()
}

/// `Θ` together with every vertex 𝒢-adjacent to it.
pub fn n_g(g: &DefiningGraph, theta: VSet, members: &[VSet]) -> VSet {
    let mut out = theta;
    for t in theta.iter() {
        out = out.union(g.link(t));
    }
    for m in members {
        if m.meets(theta) {
            out = out.union(*m);
        }
    }
    out
}

/// Components of `s` under 𝒢-adjacency (paths stay inside `s`), ordered by
/// least member.
pub fn g_components(g: &DefiningGraph, s: VSet, members: &[VSet]) -> Vec<VSet> {
    let comps = g.components(s);
    let mut parent: Vec<usize> = (0..comps.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for m in members {
        let mm = m.inter(s);
        let mut first: Option<usize> = None;
        for (i, c) in comps.iter().enumerate() {
            if c.meets(mm) {
                match first {
                    None => first = Some(i),
                    Some(f) => {
                        let (a, b) = (find(&mut parent, f), find(&mut parent, i));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
    }
    let mut merged: Vec<VSet> = vec![VSet::EMPTY; comps.len()];
    for (i, c) in comps.iter().enumerate() {
        let r = find(&mut parent, i);
        merged[r] = merged[r].union(*c);
    }
    let mut out: Vec<VSet> = merged.into_iter().filter(|c| !c.is_empty()).collect();
    out.sort_by_key(|c| c.first());
    out
}
