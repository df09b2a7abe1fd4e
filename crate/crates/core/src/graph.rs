//! Defining graphs, vertex sets, links, stars and components.
//!
//! Vertex sets are `u64` bitsets over dense vertex indices, so graphs are
//! limited to [`MAX_VERTICES`] vertices. A vertex set is always read as the
//! full subgraph it spans.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of vertices (one bit per vertex in a `u64`).
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VSet(pub u64);

/// A full subgraph, given by its vertex set. The owning graph is implicit.
pub type Subgraph = VSet;

impl VSet {
    pub const EMPTY: VSet = VSet(0);

    pub fn full(n: usize) -> VSet {
        if n >= 64 {
            VSet(u64::MAX)
        } else {
            VSet((1u64 << n) - 1)
        }
    }

    pub fn single(v: usize) -> VSet {
        VSet(1u64 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> VSet {
        let mut s = VSet::EMPTY;
        for v in it {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> VSet {
        VSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> VSet {
        VSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, o: VSet) -> VSet {
        VSet(self.0 | o.0)
    }

    #[inline]
    pub fn inter(self, o: VSet) -> VSet {
        VSet(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: VSet) -> VSet {
        VSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: VSet) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn meets(self, o: VSet) -> bool {
        self.0 & o.0 != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Least member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in increasing index order.
    pub fn iter(self) -> VSetIter {
        VSetIter(self.0)
    }

    /// Re-index a subset of `members` into the dense index space of the
    /// subgraph spanned by `members` (the i-th member becomes index i).
    pub fn compress(self, members: VSet) -> VSet {
        let mut out = VSet::EMPTY;
        for (i, v) in members.iter().enumerate() {
            if self.contains(v) {
                out.insert(i);
            }
        }
        out
    }

    /// Inverse of [`VSet::compress`].
    pub fn expand(self, members: VSet) -> VSet {
        let mut out = VSet::EMPTY;
        for (i, v) in members.iter().enumerate() {
            if self.contains(i) {
                out.insert(v);
            }
        }
        out
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VSetIter(u64);

impl Iterator for VSetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A simple undirected graph with labelled vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VSet>,
}

impl fmt::Debug for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DefiningGraph({:?}, edges {:?})", self.labels, self.edge_labels())
    }
}

impl DefiningGraph {
    /// Build a graph from labels and label pairs. Rejects duplicate labels,
    /// loops, unknown endpoints and more than [`MAX_VERTICES`] vertices.
    /// Repeated edges are merged.
    pub fn new<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::Capability(format!(
                "{} vertices exceeds the limit of {MAX_VERTICES}",
                labels.len()
            )));
        }
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let l = l.as_ref();
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || "^:[](),".contains(c)) {
                return Err(Error::Input(format!("invalid vertex label {l:?}")));
            }
            if index.insert(l.to_string(), i).is_some() {
                return Err(Error::Input(format!("duplicate vertex {l:?}")));
            }
            owned.push(l.to_string());
        }
        let mut adj = vec![VSet::EMPTY; owned.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::Input(format!("edge endpoint {a:?} is not a vertex")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::Input(format!("edge endpoint {b:?} is not a vertex")))?;
            if ia == ib {
                return Err(Error::Input(format!("loop at {a:?}")));
            }
            adj[ia].insert(ib);
            adj[ib].insert(ia);
        }
        Ok(DefiningGraph { labels: owned, index, adj })
    }

    /// Build from dense indices; used internally for subgraphs and tests.
    pub fn from_adjacency(labels: Vec<String>, adj: Vec<VSet>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        DefiningGraph { labels, index, adj }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn all(&self) -> VSet {
        VSet::full(self.n())
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown vertex {label:?}")))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VSet> {
        let mut s = VSet::EMPTY;
        for l in labels {
            s.insert(self.vertex(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn set_labels(&self, s: VSet) -> Vec<String> {
        s.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// `{a,b,c}` rendering of a vertex set.
    pub fn fmt_set(&self, s: VSet) -> String {
        format!("{{{}}}", self.set_labels(s).join(","))
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    pub fn link(&self, v: usize) -> VSet {
        self.adj[v]
    }

    pub fn star(&self, v: usize) -> VSet {
        self.adj[v].with(v)
    }

    /// Intersection of the links of the members; all vertices for `∅`.
    pub fn link_of_set(&self, s: VSet) -> VSet {
        s.iter().fold(self.all(), |acc, v| acc.inter(self.adj[v]))
    }

    pub fn star_of_set(&self, s: VSet) -> VSet {
        self.link_of_set(s).union(s)
    }

    /// Connected components of the full subgraph on `s`, ordered by least
    /// member.
    pub fn components(&self, s: VSet) -> Vec<VSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let mut comp = VSet::single(v);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VSet::EMPTY;
                for u in frontier.iter() {
                    next = next.union(self.adj[u]);
                }
                next = next.inter(s).minus(comp);
                comp = comp.union(next);
                frontier = next;
            }
            rest = rest.minus(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, s: VSet) -> bool {
        self.components(s).len() <= 1
    }

    /// Members of `s` adjacent to every other member of `s`.
    pub fn z_of(&self, s: VSet) -> VSet {
        VSet::from_iter(s.iter().filter(|&v| s.without(v).is_subset(self.adj[v])))
    }

    /// Vertices adjacent to all others; spans the centre of `A_Γ`.
    pub fn center_vertices(&self) -> VSet {
        self.z_of(self.all())
    }

    pub fn is_complete(&self, s: VSet) -> bool {
        self.z_of(s) == s
    }

    pub fn is_edgeless(&self, s: VSet) -> bool {
        s.iter().all(|v| !self.adj[v].meets(s))
    }

    /// `(centre, rest)` when the centre is nonempty.
    pub fn is_join(&self) -> Option<(VSet, VSet)> {
        let z = self.center_vertices();
        if z.is_empty() {
            None
        } else {
            Some((z, self.all().minus(z)))
        }
    }

    /// The full subgraph on `s` as a graph in its own right; vertex `i` of
    /// the result is the `i`-th member of `s`.
    pub fn induced(&self, s: VSet) -> DefiningGraph {
        let labels: Vec<String> = s.iter().map(|v| self.labels[v].clone()).collect();
        let adj = s.iter().map(|v| self.adj[v].inter(s).compress(s)).collect();
        DefiningGraph::from_adjacency(labels, adj)
    }

    /// Largest clique size inside `s` (the cohomological dimension of
    /// `A_s`). Exponential, fine at desk scale.
    pub fn clique_number(&self, s: VSet) -> usize {
        fn grow(g: &DefiningGraph, cand: VSet, size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            match cand.first() {
                None => *best = (*best).max(size),
                Some(v) => {
                    grow(g, cand.without(v).inter(g.adj[v]), size + 1, best);
                    grow(g, cand.without(v), size, best);
                }
            }
        }
        let mut best = 0;
        grow(self, s, 0, &mut best);
        best
    }
}
