//! The two worked families: the string of `d` diamonds and the graphs whose
//! vertex class graph is a 4-path, with their decomposition scripts and
//! the generator lists used for lower bounds.

use crate::autos::LaurenceGenerator;
use crate::decompose::{RestrictMode, ScriptOp};
use crate::graph::{DefiningGraph, VSet};
use crate::peripheral::PeripheralPair;

/// Vertices `a1..ad, b1..bd, c0..cd`; diamond `i` is the 4-cycle
/// `c_{i−1} – a_i – c_i – b_i – c_{i−1}`.
pub fn diamonds(d: usize) -> DefiningGraph {
    assert!(d >= 1, "at least one diamond");
    let mut labels: Vec<String> = Vec::new();
    labels.extend((1..=d).map(|i| format!("a{i}")));
    labels.extend((1..=d).map(|i| format!("b{i}")));
    labels.extend((0..=d).map(|i| format!("c{i}")));
    let mut edges = Vec::new();
    for i in 1..=d {
        for x in ["a", "b"] {
            edges.push((format!("{x}{i}"), format!("c{}", i - 1)));
            edges.push((format!("{x}{i}"), format!("c{i}")));
        }
    }
    DefiningGraph::new(&labels, &edges).expect("diamond graph is well formed")
}

fn labels_of(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `A_k = ⟨a_i, b_i, c_0, …, c_k : i ≤ k⟩`.
pub fn diamond_prefix(k: usize) -> Vec<String> {
    let mut v = labels_of("a", 1..=k);
    v.extend(labels_of("b", 1..=k));
    v.extend(labels_of("c", 0..=k));
    v
}

/// `B_k = ⟨c_{k−1}, a_k, b_k, c_k⟩`.
pub fn diamond_block(k: usize) -> Vec<String> {
    vec![format!("c{}", k - 1), format!("a{k}"), format!("b{k}"), format!("c{k}")]
}

/// Restrict to the last diamond, then to the rest; the inner kernel is
/// split by the star of the shared vertex and a projection; the image on
/// the rest recurses.
pub fn diamonds_script(d: usize) -> Vec<ScriptOp> {
    let mut ops = Vec::new();
    push_diamonds(d, &mut ops);
    ops
}

fn push_diamonds(d: usize, ops: &mut Vec<ScriptOp>) {
    let fast = RestrictMode::Fast;
    if d == 1 {
        ops.push(ScriptOp::Auto);
        return;
    }
    ops.push(ScriptOp::Restrict { target: diamond_block(d), mode: fast });
    ops.push(ScriptOp::Restrict { target: diamond_prefix(d - 1), mode: fast });
    ops.push(ScriptOp::Auto);
    push_diamonds(d - 1, ops);
    ops.push(ScriptOp::Auto);
}

/// Classes `[w]` (p, edgeless), `[x]` (q, clique), `[y]` (r, clique),
/// `[z]` (s, edgeless), joined along the path `[w]–[x]–[y]–[z]`.
pub fn four_path(p: usize, q: usize, r: usize, s: usize) -> DefiningGraph {
    assert!(p >= 1 && q >= 1 && r >= 1 && s >= 1, "class sizes are positive");
    let w = labels_of("w", 1..=p);
    let x = labels_of("x", 1..=q);
    let y = labels_of("y", 1..=r);
    let z = labels_of("z", 1..=s);
    let mut edges = Vec::new();
    let join = |a: &[String], b: &[String], e: &mut Vec<(String, String)>| {
        for u in a {
            for v in b {
                e.push((u.clone(), v.clone()));
            }
        }
    };
    let clique = |a: &[String], e: &mut Vec<(String, String)>| {
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                e.push((a[i].clone(), a[j].clone()));
            }
        }
    };
    join(&w, &x, &mut edges);
    join(&x, &y, &mut edges);
    join(&y, &z, &mut edges);
    clique(&x, &mut edges);
    clique(&y, &mut edges);
    let labels: Vec<String> = [w, x, y, z].concat();
    DefiningGraph::new(&labels, &edges).expect("4-path graph is well formed")
}

/// Four restrictions (`[x]`, `[y]`, `st[x]`, `st[y]`) and two projections,
/// in pre-order.
pub fn four_path_script(p: usize, q: usize, r: usize, s: usize) -> Vec<ScriptOp> {
    let w = labels_of("w", 1..=p);
    let x = labels_of("x", 1..=q);
    let y = labels_of("y", 1..=r);
    let z = labels_of("z", 1..=s);
    let fast = RestrictMode::Fast;
    vec![
        ScriptOp::Restrict { target: x.clone(), mode: fast },
        ScriptOp::Restrict { target: y.clone(), mode: fast },
        ScriptOp::Restrict { target: [w, x.clone(), y.clone()].concat(), mode: fast },
        ScriptOp::Restrict { target: [x, y, z].concat(), mode: fast },
        ScriptOp::Leaf,
        ScriptOp::Project,
        ScriptOp::Auto,
        ScriptOp::Project,
        ScriptOp::Auto,
        ScriptOp::Auto,
        ScriptOp::Auto,
    ]
}

fn v(g: &DefiningGraph, l: &str) -> usize {
    g.vertex(l).expect("family vertex")
}

/// `π^x_y`: conjugation by `x` on the component of `Γ − st(x)` containing `y`.
pub fn pc_on_component_of(g: &DefiningGraph, x: usize, y: usize) -> LaurenceGenerator {
    let rest = g.all().minus(g.star(x));
    let k = g.components(rest).into_iter().find(|c| c.contains(y)).unwrap_or(VSet::EMPTY);
    LaurenceGenerator::PartialConj { acting: x, k }
}

fn trv(moved: usize, acting: usize) -> LaurenceGenerator {
    LaurenceGenerator::Transvection { moved, acting }
}

/// Commuting generators of a free abelian subgroup of rank `4d − 1`
/// (`4d − 2` with `without_last`, which drops `ρ^{c_{d−1}}_{c_d}`).
pub fn diamonds_lower_generators(g: &DefiningGraph, d: usize, without_last: bool) -> Vec<LaurenceGenerator> {
    assert!(d >= 2);
    let a = |i: usize| v(g, &format!("a{i}"));
    let b = |i: usize| v(g, &format!("b{i}"));
    let c = |i: usize| v(g, &format!("c{i}"));
    let mut out = Vec::new();
    for i in 1..=d {
        out.push(trv(b(i), a(i)));
    }
    for i in 1..=d {
        out.push(pc_on_component_of(g, a(i), b(i)));
    }
    for i in 2..d {
        out.push(pc_on_component_of(g, a(i), c(d)));
    }
    for i in 1..d {
        out.push(pc_on_component_of(g, c(i), c(0)));
    }
    out.push(trv(c(0), c(1)));
    if !without_last {
        out.push(trv(c(d), c(d - 1)));
    }
    out
}

/// Generators of a nilpotent subgroup of Hirsch length equal to the closed
/// formula.
pub fn four_path_lower_generators(g: &DefiningGraph, p: usize, q: usize, r: usize, s: usize) -> Vec<LaurenceGenerator> {
    let class = |prefix: &str, k: usize| -> Vec<usize> { (1..=k).map(|i| v(g, &format!("{prefix}{i}"))).collect() };
    let (w, x, y, z) = (class("w", p), class("x", q), class("y", r), class("z", s));
    let mut out = Vec::new();
    for cl in [&x, &y] {
        for i in 0..cl.len() {
            for j in i + 1..cl.len() {
                out.push(trv(cl[j], cl[i]));
            }
        }
    }
    for &a in &x {
        for &u in &w {
            out.push(trv(u, a));
        }
    }
    for &a in &y {
        for &u in &z {
            out.push(trv(u, a));
        }
    }
    for (acting, moved) in [(&x, &z), (&y, &w)] {
        for &a in acting {
            for &u in moved.iter() {
                out.push(trv(u, a));
            }
        }
        for &a in acting {
            for &u in &moved[..moved.len() - 1] {
                out.push(pc_on_component_of(g, a, u));
            }
        }
    }
    out
}

/// Recognizes the two families (with the labels used here) and returns the
/// lower-bound generator list: the diamonds with `𝒢 = ℋ = ∅` or
/// `ℋ = {⟨c_d⟩}`, and the 4-path graphs with `𝒢 = ℋ = ∅`.
pub fn known_lower_generators(g: &DefiningGraph, pp: &PeripheralPair) -> Option<Vec<LaurenceGenerator>> {
    let n = g.n();
    if n >= 7 && (n - 1) % 3 == 0 {
        let d = (n - 1) / 3;
        if *g == diamonds(d) {
            if pp.is_empty() {
                return Some(diamonds_lower_generators(g, d, false));
            }
            let cd = VSet::single(v(g, &format!("c{d}")));
            if pp.g == [cd] && pp.h == [cd] {
                return Some(diamonds_lower_generators(g, d, true));
            }
            return None;
        }
    }
    if !pp.is_empty() {
        return None;
    }
    let count = |p: char| g.labels().iter().filter(|l| l.starts_with(p)).count();
    let (p, q, r, s) = (count('w'), count('x'), count('y'), count('z'));
    if p.min(q).min(r).min(s) >= 1 && p + q + r + s == n && *g == four_path(p, q, r, s) {
        return Some(four_path_lower_generators(g, p, q, r, s));
    }
    None
}

pub fn diamonds_vcd(d: usize) -> usize {
    4 * d - 1
}

pub fn four_path_vcd(p: usize, q: usize, r: usize, s: usize) -> usize {
    q * (q - 1) / 2 + r * (r - 1) / 2 + r * s + p * q + q * (2 * s - 1) + r * (2 * p - 1)
}
