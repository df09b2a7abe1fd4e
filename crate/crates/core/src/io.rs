//! JSON schemas, the text syntax for words and generators, and DOT output.

use serde::{Deserialize, Serialize};

use crate::autos::LaurenceGenerator;
use crate::decompose::{RestrictMode, ScriptOp};
use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, VSet};
use crate::orders::VertexClassGraph;
use crate::peripheral::PeripheralPair;
use crate::words::{GroupWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn from_graph(g: &DefiningGraph) -> Self {
        GraphJson { vertices: g.labels().to_vec(), edges: g.edge_labels() }
    }

    pub fn to_graph(&self) -> Result<DefiningGraph> {
        DefiningGraph::new(&self.vertices, &self.edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriphJson {
    #[serde(rename = "G", default)]
    pub g: Vec<Vec<String>>,
    #[serde(rename = "H", default)]
    pub h: Vec<Vec<String>>,
}

impl PeriphJson {
    pub fn from_pair(g: &DefiningGraph, pp: &PeripheralPair) -> Self {
        let conv = |v: &[VSet]| v.iter().map(|s| g.set_labels(*s)).collect();
        PeriphJson { g: conv(&pp.g), h: conv(&pp.h) }
    }

    pub fn to_pair(&self, g: &DefiningGraph) -> Result<PeripheralPair> {
        let conv = |v: &[Vec<String>]| -> Result<Vec<VSet>> { v.iter().map(|s| g.set_of(s)).collect() };
        Ok(PeripheralPair::new(conv(&self.g)?, conv(&self.h)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepJson {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

pub fn script_from_json(steps: &[StepJson]) -> Result<Vec<ScriptOp>> {
    steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mode = match s.mode.as_deref() {
                None | Some("fast") => RestrictMode::Fast,
                Some("saturated") => RestrictMode::Saturated,
                Some(m) => return Err(Error::Input(format!("script step {i}: unknown mode {m:?}"))),
            };
            match (s.op.as_str(), &s.target) {
                ("restrict", Some(t)) => Ok(ScriptOp::Restrict { target: t.clone(), mode }),
                ("restrict", None) => Err(Error::Input(format!("script step {i}: restrict needs a target"))),
                (op, Some(_)) if op != "restrict" => {
                    Err(Error::Input(format!("script step {i}: {op} takes no target")))
                }
                ("project", None) => Ok(ScriptOp::Project),
                ("leaf", None) => Ok(ScriptOp::Leaf),
                ("auto", None) => Ok(ScriptOp::Auto),
                (op, _) => Err(Error::Input(format!("script step {i}: unknown op {op:?}"))),
            }
        })
        .collect()
}

pub fn script_to_json(ops: &[ScriptOp]) -> Vec<StepJson> {
    ops.iter()
        .map(|op| match op {
            ScriptOp::Restrict { target, mode } => StepJson {
                op: "restrict".into(),
                target: Some(target.clone()),
                mode: Some(mode.name().into()),
            },
            ScriptOp::Project => StepJson { op: "project".into(), target: None, mode: None },
            ScriptOp::Leaf => StepJson { op: "leaf".into(), target: None, mode: None },
            ScriptOp::Auto => StepJson { op: "auto".into(), target: None, mode: None },
        })
        .collect()
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

/// `"a1 b1^-1 c0"`; an empty string is the identity.
pub fn parse_word(g: &DefiningGraph, s: &str) -> Result<GroupWord> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (name, neg) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let v = g.vertex(name)?;
        out.push(if neg { Letter::neg(v) } else { Letter::pos(v) });
    }
    Ok(GroupWord(out))
}

pub fn format_word(g: &DefiningGraph, w: &GroupWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.0.iter()
        .map(|l| {
            let name = g.label(l.vertex());
            if l.neg {
                format!("{name}^-1")
            } else {
                name.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `inv v`, `trv moved^acting`, `pc acting:[v1,v2]`, `sym (a b)(c d)`.
pub fn parse_generator(g: &DefiningGraph, s: &str) -> Result<LaurenceGenerator> {
    let s = s.trim();
    let (kind, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let rest = rest.trim();
    let bad = || Error::Input(format!("cannot parse generator {s:?}"));
    let gen = match kind {
        "inv" => LaurenceGenerator::Inversion(g.vertex(rest)?),
        "trv" => {
            let (m, a) = rest.split_once('^').ok_or_else(bad)?;
            LaurenceGenerator::Transvection { moved: g.vertex(m.trim())?, acting: g.vertex(a.trim())? }
        }
        "pc" => {
            let (a, k) = rest.split_once(':').ok_or_else(bad)?;
            let k = k.trim().strip_prefix('[').and_then(|k| k.strip_suffix(']')).ok_or_else(bad)?;
            let names: Vec<&str> = k.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
            LaurenceGenerator::PartialConj { acting: g.vertex(a.trim())?, k: g.set_of(&names)? }
        }
        "sym" => {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            let mut body = rest;
            while !body.is_empty() {
                let inner = body.strip_prefix('(').ok_or_else(bad)?;
                let (cycle, tail) = inner.split_once(')').ok_or_else(bad)?;
                let verts: Vec<usize> =
                    cycle.split_whitespace().map(|x| g.vertex(x)).collect::<Result<_>>()?;
                for i in 0..verts.len() {
                    perm[verts[i]] = verts[(i + 1) % verts.len()];
                }
                body = tail.trim_start();
            }
            LaurenceGenerator::Symmetry(perm)
        }
        _ => return Err(bad()),
    };
    crate::autos::validate(g, &gen)?;
    Ok(gen)
}

pub fn format_generator(g: &DefiningGraph, gen: &LaurenceGenerator) -> String {
    match gen {
        LaurenceGenerator::Inversion(v) => format!("inv {}", g.label(*v)),
        LaurenceGenerator::Transvection { moved, acting } => {
            format!("trv {}^{}", g.label(*moved), g.label(*acting))
        }
        LaurenceGenerator::PartialConj { acting, k } => {
            format!("pc {}:[{}]", g.label(*acting), g.set_labels(*k).join(","))
        }
        LaurenceGenerator::Symmetry(p) => {
            let mut seen = VSet::EMPTY;
            let mut out = String::from("sym ");
            for start in 0..p.len() {
                if seen.contains(start) || p[start] == start {
                    continue;
                }
                let mut cyc = Vec::new();
                let mut v = start;
                while !seen.contains(v) {
                    seen.insert(v);
                    cyc.push(g.label(v).to_string());
                    v = p[v];
                }
                out.push_str(&format!("({})", cyc.join(" ")));
            }
            out.trim_end().to_string()
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn graph_to_dot(g: &DefiningGraph) -> String {
    let mut s = String::from("graph G {\n");
    for l in g.labels() {
        s.push_str(&format!("  \"{}\";\n", dot_escape(l)));
    }
    for (a, b) in g.edge_labels() {
        s.push_str(&format!("  \"{}\" -- \"{}\";\n", dot_escape(&a), dot_escape(&b)));
    }
    s.push_str("}\n");
    s
}

/// Nodes labelled `name:(size,flag)`.
pub fn class_graph_to_dot(g: &DefiningGraph, vcg: &VertexClassGraph) -> String {
    let mut s = String::from("graph classes {\n");
    for (i, &(size, flag)) in vcg.coloring.iter().enumerate() {
        s.push_str(&format!("  c{i} [label=\"{}:({size},{flag})\"];\n", dot_escape(vcg.name(g, i))));
    }
    for (i, adj) in vcg.adjacency.iter().enumerate() {
        for j in adj.iter().filter(|&j| j > i) {
            s.push_str(&format!("  c{i} -- c{j};\n"));
        }
    }
    s.push_str("}\n");
    s
}
