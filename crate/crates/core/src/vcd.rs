//! Dimension accounting over decomposition trees, and certified lower
//! bounds from explicit nilpotent (usually abelian) generator lists.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::autos::{commutator, compose, is_inner, power, realize, Automorphism, LaurenceGenerator};
use crate::decompose::{decompose, h1_matrix, Descriptor, LeafClass, Node, ScriptOp, Step};
use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use crate::io::format_generator;
use crate::linalg::{self, Matrix, Span};

/// How a family of leaves is given a dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    Builtin,
    Unknown,
}

/// Dimension providers for leaves. Free-abelian, general linear and trivial
/// leaves are always known; the Fouxe-Rabinovitch shapes are configurable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimProviderConfig {
    /// `Out(F_m)`: `2m − 3` for `m ≥ 2`.
    pub fr_free: Formula,
    /// `ℤ^q ∗ F_s` relative to `{ℤ^q}ᵗ`: `q(2s − 1)`.
    pub fr_zq_fs: Formula,
    /// `A₁ ∗ A₂` relative to `{A₁, A₂}ᵗ`, which is `A₁/Z(A₁) × A₂/Z(A₂)`:
    /// the sum of the clique numbers of the non-central parts.
    pub fr_two_factors: Formula,
    /// `(node id, dimension)` pairs that replace the provider value.
    pub overrides: Vec<(usize, usize)>,
}

impl Default for DimProviderConfig {
    fn default() -> Self {
        DimProviderConfig {
            fr_free: Formula::Builtin,
            fr_zq_fs: Formula::Builtin,
            fr_two_factors: Formula::Builtin,
            overrides: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    #[serde(default)]
    pub fr_free: Option<String>,
    #[serde(default)]
    pub fr_zq_fs: Option<String>,
    #[serde(default)]
    pub fr_two_factors: Option<String>,
    #[serde(default)]
    pub overrides: Vec<OverrideJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideJson {
    pub node: usize,
    pub dim: usize,
}

impl ConfigJson {
    pub fn to_config(&self) -> Result<DimProviderConfig> {
        let pick = |v: &Option<String>, builtin: &str, key: &str| -> Result<Formula> {
            match v.as_deref() {
                None => Ok(Formula::Builtin),
                Some("unknown") => Ok(Formula::Unknown),
                Some(s) if s.replace(' ', "") == builtin => Ok(Formula::Builtin),
                Some(s) => Err(Error::Input(format!(
                    "{key}: unsupported formula {s:?} (expected {builtin:?} or \"unknown\")"
                ))),
            }
        };
        Ok(DimProviderConfig {
            fr_free: pick(&self.fr_free, "2m-3", "fr_free")?,
            fr_zq_fs: pick(&self.fr_zq_fs, "q*(2s-1)", "fr_zq_fs")?,
            fr_two_factors: pick(&self.fr_two_factors, "cd-sum", "fr_two_factors")?,
            overrides: self.overrides.iter().map(|o| (o.node, o.dim)).collect(),
        })
    }
}

/// Dimension of a leaf and the rule that produced it.
pub fn leaf_dimension(g: &DefiningGraph, leaf: &LeafClass, cfg: &DimProviderConfig) -> (Option<usize>, String) {
    match leaf {
        LeafClass::Trivial => (Some(0), "trivial group".into()),
        LeafClass::FreeAbelian { rank_lower, rank_upper } => {
            let note = if rank_lower == rank_upper {
                format!("free abelian of rank {rank_upper}")
            } else {
                format!("free abelian, rank at most {rank_upper} (at least {rank_lower})")
            };
            (Some(*rank_upper), note)
        }
        LeafClass::GeneralLinear { m, extension_rank } => (
            Some(extension_rank + m * (m.saturating_sub(1)) / 2),
            format!("GL({m},Z): m(m-1)/2 plus extension rank {extension_rank}"),
        ),
        LeafClass::FouxeRabinovitch { factors, free_rank } => {
            let m = *free_rank;
            match factors.len() {
                0 => match cfg.fr_free {
                    Formula::Builtin => {
                        (Some(if m >= 2 { 2 * m - 3 } else { 0 }), format!("Out(F_{m}): 2m-3"))
                    }
                    Formula::Unknown => (None, "Out(F_m) provider disabled".into()),
                },
                1 if m == 0 => (Some(0), "single factor, no free part: trivial".into()),
                1 if g.is_complete(factors[0]) => match cfg.fr_zq_fs {
                    Formula::Builtin => {
                        let q = factors[0].len();
                        (Some(q * (2 * m - 1)), format!("Z^{q} * F_{m} rel Z^{q}: q(2s-1)"))
                    }
                    Formula::Unknown => (None, "Z^q * F_s provider disabled".into()),
                },
                2 if m == 0 => match cfg.fr_two_factors {
                    Formula::Builtin => {
                        let cd = |s: crate::graph::VSet| g.clique_number(s.minus(g.z_of(s)));
                        let (a, b) = (cd(factors[0]), cd(factors[1]));
                        (Some(a + b), format!("A1 * A2 rel both: cd(A1/Z) + cd(A2/Z) = {a} + {b}"))
                    }
                    Formula::Unknown => (None, "two-factor provider disabled".into()),
                },
                _ => (None, "no dimension formula for this free product shape".into()),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub node: usize,
    pub group: String,
    pub piece: String,
    pub dim: Option<usize>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcdBound {
    pub upper: Option<usize>,
    pub lower: Option<usize>,
    pub per_leaf: Vec<Contribution>,
}

/// Sum over the subnormal series: leaf dimensions plus projection kernel
/// ranks. Any unknown leaf makes the total unknown.
pub fn vcd_upper(tree: &Node, cfg: &DimProviderConfig) -> VcdBound {
    let mut per_leaf = Vec::new();
    for n in tree.preorder() {
        let g = &n.desc.graph;
        let over = cfg.overrides.iter().find(|(id, _)| *id == n.id).map(|x| x.1);
        match &n.step {
            Step::Leaf(l) => {
                let (dim, why) = leaf_dimension(g, l, cfg);
                let (dim, why) = match over {
                    Some(d) => (Some(d), format!("override (provider said {why})")),
                    None => (dim, why),
                };
                per_leaf.push(Contribution {
                    node: n.id,
                    group: n.desc.summary(),
                    piece: l.describe(g),
                    dim,
                    provenance: why,
                });
            }
            Step::Project { kernel_rank, center, .. } => per_leaf.push(Contribution {
                node: n.id,
                group: n.desc.summary(),
                piece: format!("Z^{kernel_rank}"),
                dim: Some(over.unwrap_or(*kernel_rank)),
                provenance: format!(
                    "projection kernel: transvections by central letters of {}",
                    g.fmt_set(*center)
                ),
            }),
            Step::Restrict { .. } => {}
        }
    }
    let upper = per_leaf.iter().try_fold(0usize, |acc, c| c.dim.map(|d| acc + d));
    VcdBound { upper, lower: None, per_leaf }
}

/// A certified lower bound: the generators span a nilpotent subgroup of
/// Hirsch length `rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub rank: usize,
    /// Hirsch length of the image in `GL(n, ℤ)`.
    pub h1_rank: usize,
    /// Independent generators acting trivially on the abelianization.
    pub ia_rank: usize,
    /// Every pairwise commutator is inner.
    pub abelian: bool,
    /// `(i, j, k, sign)`: `[gᵢ, gⱼ] = g_k^{sign}` modulo inner.
    pub relations: Vec<(usize, usize, usize, i8)>,
}

fn fail(msg: String) -> Error {
    Error::Contract(format!("certification failed: {msg}"))
}

fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
}

/// Certifies that `gens` generate a nilpotent subgroup of `Out(A_Γ)` of
/// Hirsch length at least `rank`, hence `vcd(Out(A_Γ)) ≥ rank`.
///
/// Checks: (i) every commutator `[gᵢ, gⱼ]` is inner or equals some
/// `g_k^{±1}` modulo inner, with an acyclic dependency pattern; (ii) the
/// images in `GL(n, ℤ)` are unipotent and generate a nilpotent associative
/// algebra, and the rational Lie algebra generated by their logarithms has
/// dimension `h1_rank`; (iii) the generators acting trivially on the
/// abelianization commute modulo inner and every nonzero exponent vector
/// in `[−box, box]^k` gives a non-inner product.
pub fn certify_lower_bound(g: &DefiningGraph, gens: &[LaurenceGenerator], box_bound: i64) -> Result<Certificate> {
    let name = |i: usize| format_generator(g, &gens[i]);
    let autos: Vec<Automorphism> = gens.iter().map(|x| realize(g, x)).collect::<Result<_>>()?;
    let k = autos.len();
    let mut relations = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let c = commutator(g, &autos[i], &autos[j]);
            if is_inner(g, &c).is_yes() {
                continue;
            }
            let hit = (0..k).find_map(|l| {
                [1i8, -1].into_iter().find_map(|s| {
                    let t = compose(g, &c, &power(g, &autos[l], -i64::from(s)));
                    is_inner(g, &t).is_yes().then_some((l, s))
                })
            });
            match hit {
                Some((l, s)) if l != i && l != j => relations.push((i, j, l, s)),
                _ => {
                    return Err(fail(format!(
                        "the commutator of {} and {} is neither inner nor a listed generator",
                        name(i),
                        name(j)
                    )))
                }
            }
        }
    }
    // acyclicity of "g_k arises from g_i and g_j"
    let mut depth = vec![0usize; k];
    for _ in 0..=k {
        let mut changed = false;
        for &(i, j, l, _) in &relations {
            let d = depth[i].max(depth[j]) + 1;
            if depth[l] < d {
                depth[l] = d;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if depth.iter().any(|&d| d > k) {
            return Err(fail("commutator relations are cyclic".into()));
        }
    }
    if depth.iter().any(|&d| d > k) {
        return Err(fail("commutator relations are cyclic".into()));
    }

    let mats: Vec<Vec<Vec<i64>>> = autos.iter().map(|a| h1_matrix(g, a)).collect();
    let ia: Vec<usize> = (0..k).filter(|&i| is_identity(&mats[i])).collect();
    let mut logs: Vec<Matrix> = Vec::new();
    for i in (0..k).filter(|i| !ia.contains(i)) {
        match linalg::log_unipotent(&linalg::from_int(&mats[i])) {
            Some(l) => logs.push(l),
            None => return Err(fail(format!("{} does not act unipotently on homology", name(i)))),
        }
    }
    let n = g.n();
    // nilpotency of the associative algebra generated by the logs
    let mut layer: Vec<Matrix> = logs.clone();
    for _ in 0..n {
        let mut span = Span::new();
        let mut next = Vec::new();
        for a in &layer {
            for l in &logs {
                let p = linalg::mul(a, l);
                if span.insert(&linalg::flatten(&p)) {
                    next.push(p);
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    if !layer.is_empty() {
        return Err(fail("the homology images do not generate a unipotent group".into()));
    }
    let mut lie = Span::new();
    let mut basis: Vec<Matrix> = Vec::new();
    for l in &logs {
        if lie.insert(&linalg::flatten(l)) {
            basis.push(l.clone());
        }
    }
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for l in &logs {
                let b = linalg::bracket(a, l);
                if lie.insert(&linalg::flatten(&b)) {
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    let h1_rank = lie.dim();

    for (x, &i) in ia.iter().enumerate() {
        for &j in &ia[x + 1..] {
            if !is_inner(g, &commutator(g, &autos[i], &autos[j])).is_yes() {
                return Err(fail(format!(
                    "{} and {} act trivially on homology but do not commute",
                    name(i),
                    name(j)
                )));
            }
        }
    }
    let m = ia.len();
    let pows: Vec<Vec<Automorphism>> = ia
        .iter()
        .map(|&i| (-box_bound..=box_bound).map(|e| power(g, &autos[i], e)).collect())
        .collect();
    let width = (2 * box_bound + 1) as usize;
    let total = width.checked_pow(m as u32).ok_or_else(|| {
        Error::Capability("independence box is too large to enumerate".into())
    })?;
    if total > 5_000_000 {
        return Err(Error::Capability(format!("independence box has {total} points; reduce --box")));
    }
    for code in 0..total {
        let mut c = code;
        let mut prod = Automorphism::identity(n);
        let mut nonzero = false;
        let mut exps = Vec::with_capacity(m);
        for p in &pows {
            let idx = c % width;
            c /= width;
            let e = idx as i64 - box_bound;
            exps.push(e);
            if e != 0 {
                nonzero = true;
                prod = compose(g, &prod, &p[idx]);
            }
        }
        if nonzero && is_inner(g, &prod).is_yes() {
            let desc: Vec<String> = ia.iter().zip(&exps).filter(|(_, e)| **e != 0).map(|(&i, e)| format!("({})^{e}", name(i))).collect();
            return Err(fail(format!("the product {} is inner", desc.join(" "))));
        }
    }
    let rank = h1_rank + m;
    if rank > k {
        return Err(Error::Internal(format!("certified rank {rank} exceeds {k} generators")));
    }
    Ok(Certificate { rank, h1_rank, ia_rank: m, abelian: relations.is_empty(), relations })
}

/// Decompose, bound from above, and certify from below when a generator
/// list is given.
pub fn vcd_report(
    d: &Descriptor,
    script: Option<&[ScriptOp]>,
    cfg: &DimProviderConfig,
    lower_gens: Option<&[LaurenceGenerator]>,
    box_bound: i64,
) -> Result<(Node, VcdBound, Option<Certificate>)> {
    let tree = decompose(d, script)?;
    let mut bound = vcd_upper(&tree, cfg);
    let cert = match lower_gens {
        Some(gens) => {
            let c = certify_lower_bound(&d.graph, gens, box_bound)?;
            bound.lower = Some(c.rank);
            Some(c)
        }
        None => None,
    };
    Ok((tree, bound, cert))
}

pub fn report_json(bound: &VcdBound, cert: Option<&Certificate>) -> Value {
    json!({
        "upper": bound.upper.map_or(json!("unknown"), |u| json!(u)),
        "lower": bound.lower,
        "per_leaf": bound.per_leaf.iter().map(|c| json!({
            "node": c.node,
            "group": c.group,
            "piece": c.piece,
            "dim": c.dim.map_or(json!("unknown"), |u| json!(u)),
            "provenance": c.provenance,
        })).collect::<Vec<_>>(),
        "certificate": cert.map(|c| json!({
            "rank": c.rank,
            "h1_rank": c.h1_rank,
            "ia_rank": c.ia_rank,
            "abelian": c.abelian,
            "relations": c.relations.len(),
        })),
    })
}
