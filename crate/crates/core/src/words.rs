//! Words in `A_Γ`: reduction to a canonical normal form, cyclic reduction,
//! supports, and the conjugacy helpers the automorphism code builds on.
//!
//! The canonical form of an element is its lexicographically least reduced
//! representative, letters being ordered by `(vertex, sign)` with `v` before
//! `v⁻¹`. It is produced by repeatedly extracting the least letter that can
//! be shuffled to the front.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::graph::{DefiningGraph, VSet};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub v: u16,
    pub neg: bool,
}

impl Letter {
    pub fn pos(v: usize) -> Letter {
        Letter { v: v as u16, neg: false }
    }

    pub fn neg(v: usize) -> Letter {
        Letter { v: v as u16, neg: true }
    }

    pub fn inv(self) -> Letter {
        Letter { v: self.v, neg: !self.neg }
    }

    pub fn vertex(self) -> usize {
        self.v as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.v, if self.neg { "⁻" } else { "⁺" })
    }
}

/// A word in the generators; not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord(pub Vec<Letter>);

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letter(v: usize) -> Self {
        GroupWord(vec![Letter::pos(v)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, o: &GroupWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        GroupWord(v)
    }

    /// `self · o · self⁻¹`, unreduced.
    pub fn conjugate(&self, o: &GroupWord) -> Self {
        self.concat(o).concat(&self.inverse())
    }

    /// Vertices occurring in the word (as written).
    pub fn letters_set(&self) -> VSet {
        VSet::from_iter(self.0.iter().map(|l| l.vertex()))
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut e = vec![0i64; n];
        for l in &self.0 {
            e[l.vertex()] += if l.neg { -1 } else { 1 };
        }
        e
    }

    /// `self^k` for any integer `k`, unreduced.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        GroupWord(out)
    }
}

#[inline]
/// Free reduction modulo commutations, without canonical ordering.
fn cancel(g: &DefiningGraph, w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    'next: for &x in w {
        for j in (0..out.len()).rev() {
            let y = out[j];
            if y.v == x.v {
                if y.neg != x.neg {
                    out.remove(j);
                    continue 'next;
                }
                break;
            }
            if !g.adjacent(y.vertex(), x.vertex()) {
                break;
            }
        }
        out.push(x);
    }
    out
}

/// Lexicographically least shuffle of a reduced word.
fn canonical(g: &DefiningGraph, mut w: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    while !w.is_empty() {
        let mut best: Option<usize> = None;
        let mut blockers: Vec<Letter> = Vec::new();
        for i in 0..w.len() {
            let x = w[i];
            if blockers.iter().all(|&b| b.v != x.v && g.adjacent(b.vertex(), x.vertex()))
                && best.map_or(true, |b| x < w[b])
            {
                best = Some(i);
            }
            blockers.push(x);
        }
        out.push(w.remove(best.expect("some letter is always available")));
    }
    out
}

/// Reduced canonical form.
pub fn reduce(g: &DefiningGraph, w: &GroupWord) -> GroupWord {
    GroupWord(canonical(g, cancel(g, &w.0)))
}

/// Have `reduce(w) == w` and no further cancellation.
pub fn is_canonical(g: &DefiningGraph, w: &GroupWord) -> bool {
    reduce(g, w) == *w
}

pub fn equal(g: &DefiningGraph, a: &GroupWord, b: &GroupWord) -> bool {
    reduce(g, a) == reduce(g, b)
}

pub fn is_trivial(g: &DefiningGraph, w: &GroupWord) -> bool {
    cancel(g, &w.0).is_empty()
}

/// Support of the element: the vertices of any reduced representative.
pub fn supp(g: &DefiningGraph, w: &GroupWord) -> VSet {
    VSet::from_iter(cancel(g, &w.0).iter().map(|l| l.vertex()))
}

/// Positions of a reduced word whose letter can be shuffled to the front.
fn head_positions(g: &DefiningGraph, w: &[Letter]) -> Vec<usize> {
    (0..w.len())
        .filter(|&i| w[..i].iter().all(|&b| b.v != w[i].v && g.adjacent(b.vertex(), w[i].vertex())))
        .collect()
}

/// Positions of a reduced word whose letter can be shuffled to the end.
fn tail_positions(g: &DefiningGraph, w: &[Letter]) -> Vec<usize> {
    (0..w.len())
        .filter(|&i| {
            w[i + 1..].iter().all(|&b| b.v != w[i].v && g.adjacent(b.vertex(), w[i].vertex()))
        })
        .collect()
}

/// Writes `w = c · core · c⁻¹` with `core` cyclically reduced. Both parts
/// are returned in canonical form.
pub fn cyc_reduce(g: &DefiningGraph, w: &GroupWord) -> (GroupWord, GroupWord) {
    let mut core = cancel(g, &w.0);
    let mut conj = Vec::new();
    loop {
        let heads = head_positions(g, &core);
        let tails = tail_positions(g, &core);
        let pair = heads.iter().find_map(|&i| {
            tails.iter().find(|&&j| j != i && core[j] == core[i].inv()).map(|&j| (i, j))
        });
        match pair {
            None => break,
            Some((i, j)) => {
                conj.push(core[i]);
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                core.remove(hi);
                core.remove(lo);
            }
        }
    }
    (GroupWord(canonical(g, core)), reduce(g, &GroupWord(conj)))
}

/// Support of the cyclically reduced core.
pub fn crsupp(g: &DefiningGraph, w: &GroupWord) -> VSet {
    cyc_reduce(g, w).0.letters_set()
}

/// Minimal coset representative: writes `w = rep · h` with `h ∈ A_Y` and no
/// reduced representative of `rep` ending in a letter of `Y`. Lengths add.
pub fn split_right(g: &DefiningGraph, w: &GroupWord, y: VSet) -> (GroupWord, GroupWord) {
    let mut rep = cancel(g, &w.0);
    let mut h_rev = Vec::new();
    'outer: loop {
        for j in tail_positions(g, &rep).into_iter().rev() {
            if y.contains(rep[j].vertex()) {
                h_rev.push(rep.remove(j));
                continue 'outer;
            }
        }
        break;
    }
    h_rev.reverse();
    (GroupWord(canonical(g, rep)), GroupWord(canonical(g, h_rev)))
}

/// Three-valued answer for bounded or partially decided questions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Yes(T),
    No,
    Inconclusive,
}

impl<T> Verdict<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }
}

/// Conjugacy through cyclic permutations and commutations of the cyclically
/// reduced cores. Exact when the orbit of the first core has at most
/// `bound` elements; `Inconclusive` otherwise.
pub fn is_conjugate_simple(
    g: &DefiningGraph,
    a: &GroupWord,
    b: &GroupWord,
    bound: usize,
) -> Verdict<()> {
    let (ca, _) = cyc_reduce(g, a);
    let (cb, _) = cyc_reduce(g, b);
    if ca.len() != cb.len() || ca.letters_set() != cb.letters_set() {
        return Verdict::No;
    }
    if ca.exponent_sums(g.n()) != cb.exponent_sums(g.n()) {
        return Verdict::No;
    }
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(ca.0.clone());
    queue.push_back(ca.0);
    while let Some(w) = queue.pop_front() {
        if w == cb.0 {
            return Verdict::Yes(());
        }
        for i in head_positions(g, &w) {
            let mut r = w.clone();
            let x = r.remove(i);
            r.push(x);
            let r = canonical(g, r);
            if seen.insert(r.clone()) {
                if seen.len() > bound {
                    return Verdict::Inconclusive;
                }
                queue.push_back(r);
            }
        }
    }
    Verdict::No
}

/// Finds `c` with `targets[i].1 = c · v_i · c⁻¹` for every pair
/// `(v_i, word)`, or proves none exists.
///
/// Solutions for one vertex form a coset `d·A_{st(v)}`; the running set of
/// solutions is kept as `c·A_X` and narrowed one vertex at a time through
/// minimal coset representatives.
pub fn simultaneous_conjugator(
    g: &DefiningGraph,
    targets: &[(usize, GroupWord)],
) -> Option<GroupWord> {
    let mut c = GroupWord::empty();
    let mut x = g.all();
    for (v, t) in targets {
        let u = c.inverse().concat(t).concat(&c);
        let (core, d) = cyc_reduce(g, &u);
        if core.0 != [Letter::pos(*v)] {
            return None;
        }
        let (rep, _) = split_right(g, &d, g.star(*v));
        if !rep.letters_set().is_subset(x) {
            return None;
        }
        c = reduce(g, &c.concat(&rep));
        x = x.inter(g.star(*v));
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ls: &[(usize, bool)]) -> GroupWord {
        GroupWord(ls.iter().map(|&(v, n)| Letter { v: v as u16, neg: n }).collect())
    }

    fn p3() -> DefiningGraph {
        DefiningGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn free(n: usize) -> DefiningGraph {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let no: Vec<(String, String)> = Vec::new();
        DefiningGraph::new(&labels, &no).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let g = p3();
        assert!(reduce(&g, &w(&[(0, false), (0, true)])).is_empty());
        assert_eq!(reduce(&g, &w(&[(0, false), (1, false), (0, true)])), w(&[(1, false)]));
        let f = free(2);
        let x = w(&[(0, false), (1, false), (0, true)]);
        assert_eq!(reduce(&f, &x), x);
    }

    #[test]
    fn canonical_orders_commuting_letters() {
        let g = p3();
        // b a = a b in the canonical order
        assert_eq!(reduce(&g, &w(&[(1, false), (0, false)])), w(&[(0, false), (1, false)]));
        // c b a: a and c don't commute, so b moves out front
        assert_eq!(
            reduce(&g, &w(&[(2, false), (1, false), (0, false)])),
            w(&[(1, false), (2, false), (0, false)])
        );
    }

    #[test]
    fn cyclic_reduction() {
        let f = free(3);
        // [x u x⁻¹, v] with x=0,u=1,v=2
        let c = w(&[
            (0, false),
            (1, false),
            (0, true),
            (2, false),
            (0, false),
            (1, true),
            (0, true),
            (2, true),
        ]);
        let (core, conj) = cyc_reduce(&f, &c);
        assert!(conj.is_empty());
        assert_eq!(core.letters_set(), VSet::full(3));
        let gvg = w(&[(0, false), (1, false), (2, false), (1, true), (0, true)]);
        assert_eq!(cyc_reduce(&f, &gvg).0, w(&[(2, false)]));
        let g = p3();
        assert_eq!(crsupp(&g, &w(&[(0, false), (1, false), (0, true)])), VSet::single(1));
    }

    #[test]
    fn conjugacy_examples() {
        let f = free(3);
        let uv = w(&[(1, false), (2, false)]);
        let vu = w(&[(2, false), (1, false)]);
        assert_eq!(is_conjugate_simple(&f, &uv, &vu, 1000), Verdict::Yes(()));
        let xuxv = w(&[(0, false), (1, false), (0, true), (2, false)]);
        assert_eq!(is_conjugate_simple(&f, &uv, &xuxv, 1000), Verdict::No);
    }

    #[test]
    fn conjugator_recovered() {
        let f = free(2);
        let c = w(&[(0, false), (1, true)]);
        let targets: Vec<(usize, GroupWord)> =
            (0..2).map(|v| (v, reduce(&f, &c.conjugate(&GroupWord::letter(v))))).collect();
        let got = simultaneous_conjugator(&f, &targets).unwrap();
        assert!(equal(&f, &got, &c));
        let x0 = GroupWord::letter(0);
        let x1 = GroupWord::letter(1);
        let bad = vec![(0, reduce(&f, &x1.conjugate(&x0))), (1, reduce(&f, &x0.conjugate(&x1)))];
        assert_eq!(simultaneous_conjugator(&f, &bad), None);
    }

    #[test]
    fn split_right_strips_tail() {
        let g = p3();
        // a b with Y = st(b) = all: everything strips
        let (rep, h) = split_right(&g, &w(&[(0, false), (1, false)]), g.star(1));
        assert!(rep.is_empty());
        assert_eq!(h.len(), 2);
        let f = free(2);
        let (rep, _) = split_right(&f, &w(&[(0, false), (1, false)]), VSet::single(0));
        assert_eq!(rep.len(), 2);
    }
}
