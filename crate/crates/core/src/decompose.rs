//! Exact-sequence decomposition of relative outer automorphism groups.
//!
//! A [`Descriptor`] names `Out⁰(A_Γ; 𝒢, ℋᵗ)`. Restriction steps split it as
//! kernel (act trivially on `Δ` as well) and image (a relative group on
//! `Δ`); projection steps kill a centre; leaves are the five-case
//! classification once every restriction map is trivial.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::autos::{
    acts_trivially_on, apply, enumerate_generators, gen_in_relative, is_inner, realize,
    Automorphism, LaurenceGenerator,
};
use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, VSet};
use crate::linalg::{self, Q};
use crate::orders::{g_components, rel_order};
use crate::peripheral::{
    compress, fast_periphery, induced, is_invariant, normalize, saturate, NormalizeMode,
    PeripheralPair,
};
use crate::words::{simultaneous_conjugator, GroupWord, Verdict};

/// `Out⁰(A_Γ; 𝒢, ℋᵗ)` with a weakly normalized pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub graph: DefiningGraph,
    pub periph: PeripheralPair,
}

impl Descriptor {
    pub fn new(graph: DefiningGraph, periph: PeripheralPair) -> Result<Self> {
        let periph = normalize(&graph, &periph, NormalizeMode::Weak)?;
        Ok(Descriptor { graph, periph })
    }

    pub fn absolute(graph: DefiningGraph) -> Self {
        Descriptor { graph, periph: PeripheralPair::empty() }
    }

    pub fn generators(&self) -> Result<Vec<LaurenceGenerator>> {
        enumerate_generators(&self.graph, &self.periph)
    }

    /// Enumerated generators that are not inner automorphisms.
    pub fn outer_generators(&self) -> Result<Vec<LaurenceGenerator>> {
        let mut out = Vec::new();
        for gen in self.generators()? {
            if !is_inner(&self.graph, &realize(&self.graph, &gen)?).is_yes() {
                out.push(gen);
            }
        }
        Ok(out)
    }

    pub fn summary(&self) -> String {
        let g = &self.graph;
        let sets = |v: &[VSet]| v.iter().map(|s| g.fmt_set(*s)).collect::<Vec<_>>().join(",");
        let mut s = format!("Out0(A{}", g.fmt_set(g.all()));
        if !self.periph.g.is_empty() {
            let _ = write!(s, "; G={{{}}}", sets(&self.periph.g));
        }
        if !self.periph.h.is_empty() {
            let _ = write!(s, "; H={{{}}}^t", sets(&self.periph.h));
        }
        s.push(')');
        s
    }

    pub fn to_json(&self) -> Value {
        let g = &self.graph;
        let sets = |v: &[VSet]| -> Vec<Vec<String>> { v.iter().map(|s| g.set_labels(*s)).collect() };
        json!({
            "vertices": g.labels(),
            "edges": g.edge_labels().iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect::<Vec<_>>(),
            "G": sets(&self.periph.g),
            "H": sets(&self.periph.h),
        })
    }
}

/// `(|V(Γ)|, 2^|V(Γ)| − r)` with `r` the number of special subgroups acted
/// on trivially. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity {
    pub n: usize,
    pub m: u64,
}

const COMPLEXITY_CAP: usize = 30;

/// Number of subgraphs (including `∅` and `Γ`) on which every generator acts
/// by an inner automorphism.
pub fn trivially_acted_count(g: &DefiningGraph, gens: &[LaurenceGenerator]) -> Result<u64> {
    let mut free = g.all();
    let mut pcs = Vec::new();
    for gen in gens {
        match gen {
            LaurenceGenerator::PartialConj { acting, k } => pcs.push((g.star(*acting), *k)),
            other => free = free.minus(other.moved_vertices()),
        }
    }
    if free.len() > COMPLEXITY_CAP {
        return Err(Error::Capability(format!(
            "complexity scan over {} vertices exceeds the cap of {COMPLEXITY_CAP}",
            free.len()
        )));
    }
    let mut count = 0u64;
    let mut sub = free.0;
    loop {
        let d = VSet(sub);
        if pcs.iter().all(|&(st, k)| !k.meets(d) || d.minus(st).is_subset(k)) {
            count += 1;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free.0;
    }
    Ok(count)
}

pub fn complexity(d: &Descriptor) -> Result<Complexity> {
    let n = d.graph.n();
    if n >= 64 {
        return Err(Error::Capability("complexity needs fewer than 64 vertices".into()));
    }
    let r = trivially_acted_count(&d.graph, &d.generators()?)?;
    Ok(Complexity { n, m: (1u64 << n) - r })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RestrictMode {
    Saturated,
    #[default]
    Fast,
}

impl RestrictMode {
    pub fn name(self) -> &'static str {
        match self {
            RestrictMode::Saturated => "saturated",
            RestrictMode::Fast => "fast",
        }
    }
}

/// Result of a restriction step. `source` is the descriptor the step was
/// applied to after the adjustments of the mode (saturation, or adding `Δ`
/// to `𝒢`); lifts are taken relative to it.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub source: Descriptor,
    pub target: VSet,
    pub kernel: Descriptor,
    pub image: Descriptor,
}

fn restriction_is_nontrivial(d: &Descriptor, delta: VSet) -> Result<bool> {
    Ok(d.generators()?.iter().any(|gen| !acts_trivially_on(&d.graph, gen, delta)))
}

/// `1 → Out⁰(A_Γ; 𝒢, (ℋ∪{Δ})ᵗ) → Out⁰(A_Γ; 𝒢, ℋᵗ) → Out⁰(A_Δ; 𝒢_Δ[∪𝒫_Δ], ℋ_Δᵗ) → 1`.
pub fn restriction_step(d: &Descriptor, delta: VSet, mode: RestrictMode) -> Result<Restriction> {
    let g = &d.graph;
    if delta.is_empty() || delta == g.all() || !delta.is_subset(g.all()) {
        return Err(Error::Contract(format!(
            "restriction target {} must be a proper nonempty subgraph",
            g.fmt_set(delta)
        )));
    }
    if !is_invariant(g, &d.periph, delta)? {
        return Err(Error::Contract(format!(
            "{} is not invariant: it is not upwards closed under the relative order or is \
             star-separated by an outside vertex",
            g.fmt_set(delta)
        )));
    }
    let (source, image_g) = match mode {
        RestrictMode::Saturated => {
            let sat = saturate(g, &d.periph)?;
            let src = Descriptor { graph: g.clone(), periph: sat };
            let img = induced(&src.periph, delta).g;
            (src, img)
        }
        RestrictMode::Fast => {
            let mut pp = d.periph.clone();
            pp.g.push(delta);
            let pp = normalize(g, &PeripheralPair { normalized: false, ..pp }, NormalizeMode::Weak)?;
            let mut img = induced(&pp, delta).g;
            img.extend(fast_periphery(g, &pp, delta)?);
            (Descriptor { graph: g.clone(), periph: pp }, img)
        }
    };
    if !restriction_is_nontrivial(&source, delta)? {
        return Err(Error::Contract(format!(
            "the restriction map to {} is trivial (every generator acts on it by an inner \
             automorphism), so the step would not lower the complexity",
            g.fmt_set(delta)
        )));
    }
    let mut kh = source.periph.h.clone();
    kh.push(delta);
    let kernel = Descriptor::new(g.clone(), PeripheralPair::new(source.periph.g.clone(), kh))?;
    let image_h = induced(&source.periph, delta).h;
    let local = compress(&PeripheralPair::new(image_g, image_h), delta);
    let image = Descriptor::new(g.induced(delta), local)?;
    Ok(Restriction { source, target: delta, kernel, image })
}

/// Lifts a generator of the image group to the source group: inversions
/// and transvections by name, `π^x_K` to `π^x_L` with `L` the union of the
/// `𝒢^x`-components of `Γ − st(x)` meeting `K`.
pub fn lift_generator(step: &Restriction, gen: &LaurenceGenerator) -> Result<LaurenceGenerator> {
    let g = &step.source.graph;
    if !gen_in_relative(&step.image.graph, gen, &step.image.periph)? {
        return Err(Error::Contract("generator is not in the image group".into()));
    }
    let map: Vec<usize> = step.target.iter().collect();
    let global = gen.relabel(&map)?;
    Ok(match global {
        LaurenceGenerator::PartialConj { acting, k } => {
            let rest = g.all().minus(g.star(acting));
            let gx = crate::orders::g_sub_v(&step.source.periph.g, acting);
            let l = g_components(g, rest, &gx)
                .into_iter()
                .filter(|c| c.meets(k))
                .fold(VSet::EMPTY, |a, c| a.union(c));
            LaurenceGenerator::PartialConj { acting, k: l }
        }
        other => other,
    })
}

/// Embeds a word of `A_Δ` (local indices) into `A_Γ`.
fn embed(w: &GroupWord, map: &[usize]) -> GroupWord {
    GroupWord(
        w.0.iter()
            .map(|l| crate::words::Letter { v: map[l.vertex()] as u16, neg: l.neg })
            .collect(),
    )
}

/// Whether `R_Δ(φ)` equals `ψ ∈ Aut(A_Δ)` modulo inner automorphisms of
/// `A_Γ` restricted to `A_Δ`: the map `v ↦ φ(ψ⁻¹(v))` on `Δ` must be a
/// conjugation.
pub fn restricts_to(
    g: &DefiningGraph,
    phi: &Automorphism,
    delta: VSet,
    sub: &DefiningGraph,
    psi: &Automorphism,
) -> bool {
    let map: Vec<usize> = delta.iter().collect();
    let targets: Vec<(usize, GroupWord)> = (0..sub.n())
        .map(|i| (map[i], apply(g, phi, &embed(&psi.backward[i], &map))))
        .collect();
    simultaneous_conjugator(g, &targets).is_some()
}

/// Per-generator results of the exactness checks for one restriction step.
#[derive(Clone, Debug, Default)]
pub struct ExactnessReport {
    /// (image generator, lift, lift in source group and restricts correctly)
    pub lifts: Vec<(LaurenceGenerator, LaurenceGenerator, bool)>,
    /// (kernel generator, acts trivially on Δ)
    pub kernel: Vec<(LaurenceGenerator, bool)>,
}

impl ExactnessReport {
    pub fn all_pass(&self) -> bool {
        self.lifts.iter().all(|x| x.2) && self.kernel.iter().all(|x| x.1)
    }
}

pub fn check_exactness(step: &Restriction) -> Result<ExactnessReport> {
    let g = &step.source.graph;
    let mut rep = ExactnessReport::default();
    for gen in step.image.generators()? {
        let lift = lift_generator(step, &gen)?;
        let ok = gen_in_relative(g, &lift, &step.source.periph)?
            && restricts_to(
                g,
                &realize(g, &lift)?,
                step.target,
                &step.image.graph,
                &realize(&step.image.graph, &gen)?,
            );
        rep.lifts.push((gen, lift, ok));
    }
    for gen in step.kernel.generators()? {
        let phi = realize(g, &gen)?;
        let ok = crate::autos::acts_trivially_word(g, &phi, step.target).is_yes();
        rep.kernel.push((gen, ok));
    }
    Ok(rep)
}

/// Saturates and checks that every restriction map is trivial; returns the
/// descriptor with `ℋ := 𝒢`.
fn trivialize(d: &Descriptor, what: &str) -> Result<Descriptor> {
    let sat = saturate(&d.graph, &d.periph)?;
    let sd = Descriptor { graph: d.graph.clone(), periph: sat.clone() };
    let gens = sd.generators()?;
    for &delta in &sat.g {
        if let Some(gen) = gens.iter().find(|gen| !acts_trivially_on(&d.graph, gen, delta)) {
            return Err(Error::Contract(format!(
                "{what} needs every restriction map to be trivial, but the restriction to {} is \
                 not ({} acts nontrivially)",
                d.graph.fmt_set(delta),
                crate::io::format_generator(&d.graph, gen)
            )));
        }
    }
    let mut pp = PeripheralPair::new(sat.g.clone(), sat.g.clone());
    pp.normalized = true;
    pp.saturated = true;
    Ok(Descriptor { graph: d.graph.clone(), periph: pp })
}

/// `1 → ℤ^k → Out⁰(A_Γ; 𝒢ᵗ) → Out⁰(A_{Γ−Z}; 𝒢_{Γ−Z}ᵗ) → 1` for connected `Γ`
/// with proper nontrivial centre `Z`. Returns the source (with `ℋ = 𝒢`),
/// `Z`, `k` and the image.
pub fn projection_step(d: &Descriptor) -> Result<(Descriptor, VSet, usize, Descriptor)> {
    let g = &d.graph;
    let z = g.center_vertices();
    if !g.is_connected(g.all()) || z.is_empty() || z == g.all() {
        return Err(Error::Contract(
            "projection needs a connected graph whose centre is proper and nonempty".into(),
        ));
    }
    let src = trivialize(d, "projection")?;
    let rel = rel_order(g, &src.periph.g);
    let rest = g.all().minus(z);
    let rank = z.iter().map(|v| rest.iter().filter(|&w| rel.leq(w, v)).count()).sum();
    let img = compress(&induced(&src.periph, rest), rest);
    let image = Descriptor::new(g.induced(rest), img)?;
    Ok((src, z, rank, image))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafClass {
    Trivial,
    FreeAbelian { rank_lower: usize, rank_upper: usize },
    /// `GL(m, ℤ)` extended by `ℤ^extension_rank`.
    GeneralLinear { m: usize, extension_rank: usize },
    /// `Out(A_{Δ₁} ∗ ⋯ ∗ A_{Δ_k} ∗ F_m; {A_{Δᵢ}}ᵗ)`.
    FouxeRabinovitch { factors: Vec<VSet>, free_rank: usize },
}

impl LeafClass {
    pub fn describe(&self, g: &DefiningGraph) -> String {
        match self {
            LeafClass::Trivial => "trivial".into(),
            LeafClass::FreeAbelian { rank_lower, rank_upper } if rank_lower == rank_upper => {
                format!("Z^{rank_upper}")
            }
            LeafClass::FreeAbelian { rank_lower, rank_upper } => {
                format!("Z^k, {rank_lower} <= k <= {rank_upper}")
            }
            LeafClass::GeneralLinear { m, extension_rank: 0 } => format!("GL({m},Z)"),
            LeafClass::GeneralLinear { m, extension_rank } => {
                format!("Z^{extension_rank} . GL({m},Z)")
            }
            LeafClass::FouxeRabinovitch { factors, free_rank } => {
                let f: Vec<String> = factors.iter().map(|s| format!("A{}", g.fmt_set(*s))).collect();
                let mut parts = f.clone();
                if *free_rank > 0 {
                    parts.push(format!("F_{free_rank}"));
                }
                if f.is_empty() {
                    format!("Out(F_{free_rank})")
                } else {
                    format!("FR({}; {{{}}}^t)", parts.join(" * "), f.join(","))
                }
            }
        }
    }
}

/// Abelianization matrix: row `v` holds the exponent sums of `φ(v)`.
pub fn h1_matrix(g: &DefiningGraph, phi: &Automorphism) -> Vec<Vec<i64>> {
    phi.forward.iter().map(|w| w.exponent_sums(g.n())).collect()
}

fn h1_rank(g: &DefiningGraph, gens: &[LaurenceGenerator]) -> Result<usize> {
    let n = g.n();
    let mut rows = Vec::new();
    for gen in gens {
        let m = linalg::from_int(&h1_matrix(g, &realize(g, gen)?));
        let d = linalg::sub(&m, &linalg::identity(n));
        rows.push(linalg::flatten(&d));
    }
    let rows: Vec<Vec<Q>> = rows;
    Ok(linalg::rank(&rows))
}

/// Classification once every restriction map is trivial. Case (d) (proper
/// nontrivial centre) is not a leaf and is reported as a contract error.
pub fn classify_irreducible(d: &Descriptor) -> Result<LeafClass> {
    let src = trivialize(d, "classification")?;
    let g = &src.graph;
    let gens = src.outer_generators()?;
    if gens.is_empty() {
        return Ok(LeafClass::Trivial);
    }
    let members = &src.periph.g;
    let covered = members.iter().fold(VSet::EMPTY, |a, s| a.union(*s));
    if g.is_complete(g.all()) {
        let m = g.all().minus(covered).len();
        return Ok(LeafClass::GeneralLinear { m, extension_rank: m * (g.n() - m) });
    }
    if !g.is_connected(g.all()) {
        let comps = g_components(g, g.all(), members);
        if comps.len() >= 2 {
            let free: Vec<VSet> = comps
                .iter()
                .copied()
                .filter(|c| c.len() == 1 && g.link(c.first().unwrap()).is_empty() && !c.meets(covered))
                .collect();
            let factors = comps.iter().copied().filter(|c| !free.contains(c)).collect();
            return Ok(LeafClass::FouxeRabinovitch { factors, free_rank: free.len() });
        }
        let mut theta = VSet::EMPTY;
        for gen in &gens {
            match gen {
                LaurenceGenerator::PartialConj { acting, .. } => theta.insert(*acting),
                other => {
                    return Err(Error::Internal(format!(
                        "disconnected, relatively connected case produced a non-conjugation \
                         generator {other:?}"
                    )))
                }
            }
        }
        if !g.is_complete(theta) {
            return Err(Error::Internal("acting letters do not span a clique".into()));
        }
        return Ok(LeafClass::FreeAbelian { rank_lower: gens.len(), rank_upper: gens.len() });
    }
    let z = g.center_vertices();
    if z.is_empty() {
        let lower = h1_rank(g, &gens)?;
        return Ok(LeafClass::FreeAbelian { rank_lower: lower, rank_upper: gens.len() });
    }
    Err(Error::Contract(format!(
        "the graph has proper nontrivial centre {}; use a projection step",
        g.fmt_set(z)
    )))
}

#[derive(Clone, Debug)]
pub enum Step {
    Restrict { target: VSet, mode: RestrictMode, kernel: Box<Node>, image: Box<Node> },
    Project { center: VSet, kernel_rank: usize, image: Box<Node> },
    Leaf(LeafClass),
}

#[derive(Clone, Debug)]
pub struct Node {
    /// Pre-order index.
    pub id: usize,
    pub desc: Descriptor,
    pub complexity: Complexity,
    pub step: Step,
}

impl Node {
    pub fn children(&self) -> Vec<&Node> {
        match &self.step {
            Step::Restrict { kernel, image, .. } => vec![kernel, image],
            Step::Project { image, .. } => vec![image],
            Step::Leaf(_) => vec![],
        }
    }

    /// All nodes in pre-order.
    pub fn preorder(&self) -> Vec<&Node> {
        let mut out = vec![self];
        for c in self.children() {
            out.extend(c.preorder());
        }
        out
    }

    pub fn leaves(&self) -> Vec<(&Node, &LeafClass)> {
        self.preorder()
            .into_iter()
            .filter_map(|n| match &n.step {
                Step::Leaf(l) => Some((n, l)),
                _ => None,
            })
            .collect()
    }

    pub fn count_steps(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for n in self.preorder() {
            match n.step {
                Step::Restrict { .. } => c.0 += 1,
                Step::Project { .. } => c.1 += 1,
                Step::Leaf(_) => c.2 += 1,
            }
        }
        c
    }

    fn renumber(&mut self, next: &mut usize) {
        self.id = *next;
        *next += 1;
        match &mut self.step {
            Step::Restrict { kernel, image, .. } => {
                kernel.renumber(next);
                image.renumber(next);
            }
            Step::Project { image, .. } => image.renumber(next),
            Step::Leaf(_) => {}
        }
    }

    pub fn to_json(&self) -> Value {
        let g = &self.desc.graph;
        let step = match &self.step {
            Step::Restrict { target, mode, kernel, image } => json!({
                "op": "restrict",
                "target": g.set_labels(*target),
                "mode": mode.name(),
                "kernel": kernel.to_json(),
                "image": image.to_json(),
            }),
            Step::Project { center, kernel_rank, image } => json!({
                "op": "project",
                "center": g.set_labels(*center),
                "kernel_rank": kernel_rank,
                "image": image.to_json(),
            }),
            Step::Leaf(l) => {
                let mut v = json!({ "op": "leaf", "class": l.describe(g) });
                match l {
                    LeafClass::Trivial => v["kind"] = json!("trivial"),
                    LeafClass::FreeAbelian { rank_lower, rank_upper } => {
                        v["kind"] = json!("free_abelian");
                        v["rank_lower"] = json!(rank_lower);
                        v["rank_upper"] = json!(rank_upper);
                    }
                    LeafClass::GeneralLinear { m, extension_rank } => {
                        v["kind"] = json!("general_linear");
                        v["m"] = json!(m);
                        v["extension_rank"] = json!(extension_rank);
                    }
                    LeafClass::FouxeRabinovitch { factors, free_rank } => {
                        v["kind"] = json!("fouxe_rabinovitch");
                        v["factors"] = json!(factors.iter().map(|s| g.set_labels(*s)).collect::<Vec<_>>());
                        v["free_rank"] = json!(free_rank);
                    }
                }
                v
            }
        };
        json!({
            "id": self.id,
            "group": self.desc.summary(),
            "descriptor": self.desc.to_json(),
            "complexity": [self.complexity.n, self.complexity.m],
            "step": step,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph decomposition {\n  node [shape=box, fontname=\"monospace\"];\n");
        for n in self.preorder() {
            let g = &n.desc.graph;
            let detail = match &n.step {
                Step::Restrict { target, .. } => format!("restrict to {}", g.fmt_set(*target)),
                Step::Project { center, kernel_rank, .. } => {
                    format!("project away {} (kernel Z^{kernel_rank})", g.fmt_set(*center))
                }
                Step::Leaf(l) => l.describe(g),
            };
            let label = format!("{}\\n{}", n.desc.summary(), detail).replace('"', "\\\"");
            let _ = writeln!(s, "  n{} [label=\"{}\"];", n.id, label);
            match &n.step {
                Step::Restrict { kernel, image, .. } => {
                    let _ = writeln!(s, "  n{} -> n{} [label=\"kernel\"];", n.id, kernel.id);
                    let _ = writeln!(s, "  n{} -> n{} [label=\"image\"];", n.id, image.id);
                }
                Step::Project { image, .. } => {
                    let _ = writeln!(s, "  n{} -> n{} [label=\"image\"];", n.id, image.id);
                }
                Step::Leaf(_) => {}
            }
        }
        s.push_str("}\n");
        s
    }
}

/// One instruction of a decomposition script. Scripts are consumed in
/// pre-order (a node, then its kernel subtree, then its image subtree);
/// nodes left over when the script runs out are decomposed automatically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptOp {
    Restrict { target: Vec<String>, mode: RestrictMode },
    Project,
    Leaf,
    /// Decompose this node and its whole subtree automatically.
    Auto,
}

struct Builder<'a> {
    ops: &'a [ScriptOp],
    pos: usize,
}

impl Builder<'_> {
    fn next_op(&mut self) -> Option<&ScriptOp> {
        let op = self.ops.get(self.pos);
        self.pos += 1;
        op
    }

    fn build(&mut self, d: Descriptor, scripted: bool) -> Result<Node> {
        let op = if scripted { self.next_op().cloned().unwrap_or(ScriptOp::Auto) } else { ScriptOp::Auto };
        if op == ScriptOp::Auto {
            return auto_node(d);
        }
        let complexity = complexity(&d)?;
        let step = match op {
            ScriptOp::Restrict { target, mode } => {
                let delta = d.graph.set_of(&target)?;
                let r = restriction_step(&d, delta, mode)?;
                let kernel = self.build(r.kernel, true)?;
                let image = self.build(r.image, true)?;
                check_edge(complexity, &kernel)?;
                check_edge(complexity, &image)?;
                Step::Restrict { target: delta, mode, kernel: Box::new(kernel), image: Box::new(image) }
            }
            ScriptOp::Project => {
                let (_, center, kernel_rank, image) = projection_step(&d)?;
                let image = self.build(image, true)?;
                check_edge(complexity, &image)?;
                Step::Project { center, kernel_rank, image: Box::new(image) }
            }
            ScriptOp::Leaf => Step::Leaf(classify_irreducible(&d)?),
            ScriptOp::Auto => unreachable!(),
        };
        Ok(Node { id: 0, desc: d, complexity, step })
    }
}

fn check_edge(parent: Complexity, child: &Node) -> Result<()> {
    if child.complexity < parent {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "complexity did not decrease along an edge: {:?} -> {:?}",
            parent, child.complexity
        )))
    }
}

/// Automatic decomposition: after saturating, restrict to the smallest
/// invariant `Δ` (ties by index) with a nontrivial restriction map; when
/// there is none, project away a centre or classify.
fn auto_node(d: Descriptor) -> Result<Node> {
    let complexity = complexity(&d)?;
    if d.outer_generators()?.is_empty() {
        return Ok(Node { id: 0, desc: d, complexity, step: Step::Leaf(LeafClass::Trivial) });
    }
    let sat = saturate(&d.graph, &d.periph)?;
    let sd = Descriptor { graph: d.graph.clone(), periph: sat.clone() };
    let gens = sd.generators()?;
    let mut candidates: Vec<VSet> = sat
        .g
        .iter()
        .copied()
        .filter(|&delta| gens.iter().any(|gen| !acts_trivially_on(&d.graph, gen, delta)))
        .collect();
    candidates.sort_by_key(|s| (s.len(), s.0));
    let step = if let Some(&delta) = candidates.first() {
        let r = restriction_step(&d, delta, RestrictMode::Saturated)?;
        let kernel = auto_node(r.kernel)?;
        let image = auto_node(r.image)?;
        check_edge(complexity, &kernel)?;
        check_edge(complexity, &image)?;
        Step::Restrict {
            target: delta,
            mode: RestrictMode::Saturated,
            kernel: Box::new(kernel),
            image: Box::new(image),
        }
    } else {
        let g = &d.graph;
        let z = g.center_vertices();
        if g.is_connected(g.all()) && !z.is_empty() && z != g.all() {
            let (_, center, kernel_rank, image) = projection_step(&d)?;
            let image = auto_node(image)?;
            check_edge(complexity, &image)?;
            Step::Project { center, kernel_rank, image: Box::new(image) }
        } else {
            Step::Leaf(classify_irreducible(&d)?)
        }
    };
    Ok(Node { id: 0, desc: d, complexity, step })
}

/// Builds a decomposition tree, following `script` where given.
pub fn decompose(d: &Descriptor, script: Option<&[ScriptOp]>) -> Result<Node> {
    let mut root = match script {
        None => auto_node(d.clone())?,
        Some(ops) => {
            let mut b = Builder { ops, pos: 0 };
            let root = b.build(d.clone(), true)?;
            if b.pos < ops.len() {
                return Err(Error::Input(format!(
                    "script has {} unused step(s) after the tree was complete",
                    ops.len() - b.pos
                )));
            }
            root
        }
    };
    let mut next = 0;
    root.renumber(&mut next);
    Ok(root)
}

/// Whether `R_Δ` is nontrivial on the group (some generator acts on `Δ`
/// by a non-inner automorphism).
pub fn has_nontrivial_restriction(d: &Descriptor, delta: VSet) -> Result<bool> {
    restriction_is_nontrivial(d, delta)
}

/// Verdict-style innerness for a generator of a descriptor.
pub fn generator_is_inner(d: &Descriptor, gen: &LaurenceGenerator) -> Result<Verdict<GroupWord>> {
    Ok(is_inner(&d.graph, &realize(&d.graph, gen)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(v: &[&str], e: &[(&str, &str)]) -> DefiningGraph {
        DefiningGraph::new(v, e).unwrap()
    }

    #[test]
    fn complete_graph_is_gl() {
        let k3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let t = decompose(&Descriptor::absolute(k3), None).unwrap();
        assert!(matches!(t.step, Step::Leaf(LeafClass::GeneralLinear { m: 3, extension_rank: 0 })));
    }

    #[test]
    fn free_group_is_out_fn() {
        let f3 = graph(&["a", "b", "c"], &[]);
        let t = decompose(&Descriptor::absolute(f3), None).unwrap();
        assert_eq!(
            t.step_leaf(),
            Some(&LeafClass::FouxeRabinovitch { factors: vec![], free_rank: 3 })
        );
    }

    #[test]
    fn f2_symmetric_case() {
        let f2 = graph(&["u", "v"], &[]);
        let pp = PeripheralPair::new(vec![VSet::single(0), VSet::single(1)], vec![VSet::single(0), VSet::single(1)]);
        let d = Descriptor::new(f2, pp).unwrap();
        // Out(Z * Z; {⟨u⟩,⟨v⟩}ᵗ) is trivial: only inner partial conjugations remain
        assert_eq!(classify_irreducible(&d).unwrap(), LeafClass::Trivial);
    }

    #[test]
    fn p3_projection() {
        let p3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let d = Descriptor::absolute(p3);
        let t = decompose(&d, None).unwrap();
        // ⟨b⟩ is invariant with nontrivial restriction (inversion of b)
        match &t.step {
            Step::Restrict { target, kernel, .. } => {
                assert_eq!(*target, VSet::single(1));
                match &kernel.step {
                    Step::Project { kernel_rank, .. } => assert_eq!(*kernel_rank, 2),
                    other => panic!("expected projection, got {other:?}"),
                }
            }
            other => panic!("expected restriction, got {other:?}"),
        }
    }

    impl Node {
        fn step_leaf(&self) -> Option<&LeafClass> {
            match &self.step {
                Step::Leaf(l) => Some(l),
                _ => None,
            }
        }
    }
}
