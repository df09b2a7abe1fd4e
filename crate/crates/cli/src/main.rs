use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use raagout_core::autos::{compose, is_inner, out0_membership, realize};
use raagout_core::decompose::{
    check_exactness, decompose, has_nontrivial_restriction, restriction_step, Descriptor,
};
use raagout_core::io::{
    class_graph_to_dot, format_generator, format_word, graph_to_dot, parse_generator, parse_json,
    parse_word, script_from_json, GraphJson, PeriphJson, StepJson,
};
use raagout_core::orders::{domination, vertex_class_graph};
use raagout_core::peripheral::{
    cone_graph, fast_periphery, is_invariant, normalize, saturate, untwisted_periphery,
};
use raagout_core::vcd::{report_json, vcd_report, ConfigJson, DimProviderConfig};
use raagout_core::{
    families, Automorphism, DefiningGraph, Error, NormalizeMode, PeripheralPair, RestrictMode,
    Result, ScriptOp, Verdict, VSet,
};

#[derive(Parser)]
#[command(name = "raagout", version, about = "Relative outer automorphism groups of right-angled Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Defining graph, `{"vertices": [..], "edges": [[u, v], ..]}`.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Peripheral pair, `{"G": [[..], ..], "H": [[..], ..]}`.
    #[arg(long, global = true)]
    periph: Option<PathBuf>,
    /// Decomposition script, a JSON list of `{"op", "target"?, "mode"?}`.
    #[arg(long, global = true)]
    script: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Exponent bound of the independence check in lower-bound certification.
    #[arg(long = "box", global = true, default_value_t = 2)]
    box_bound: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fast,
    Saturated,
}

impl From<Mode> for RestrictMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Fast => RestrictMode::Fast,
            Mode::Saturated => RestrictMode::Saturated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Diamonds,
    FourPath,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex classes, the vertex class graph and basic graph data.
    Info,
    /// Generators of Out⁰(A_Γ; 𝒢, ℋᵗ).
    Gens {
        /// Drop generators that are inner automorphisms.
        #[arg(long)]
        outer: bool,
    },
    /// Whether a special subgroup is invariant.
    Invariant {
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<String>,
    },
    /// Saturate 𝒢 with every invariant proper special subgroup.
    Saturate,
    /// The peripheral structure 𝒫_Δ of the fast restriction mode, or the
    /// untwisted periphery.
    Periphery {
        #[arg(long, value_delimiter = ',')]
        target: Vec<String>,
        #[arg(long)]
        untwisted: bool,
    },
    /// One restriction step: kernel and image descriptors.
    Restrict {
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
    },
    /// Decomposition tree, automatic or following --script.
    Decompose,
    /// Upper bound from the decomposition and certified lower bound.
    Vcd {
        /// Dimension provider configuration (JSON).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Generators for the lower bound, one per line; defaults to the
        /// built-in list when the graph is one of the known families.
        #[arg(long)]
        lower: Option<PathBuf>,
        /// Skip the lower bound.
        #[arg(long)]
        no_lower: bool,
    },
    /// The relative cone graph of (Γ, 𝒢).
    ConeGraph,
    /// Compose generators (leftmost outermost) and apply the result.
    Apply {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Lift/kernel checks of the exact sequence for a restriction step.
    CheckExact {
        /// Target; defaults to every member of the saturation with a
        /// nontrivial restriction.
        #[arg(long, value_delimiter = ',')]
        target: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Saturated)]
        mode: Mode,
        /// Check only this many targets, chosen with --seed.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Emit a graph (or its script with --emit-script) of a worked family.
    Family {
        #[arg(value_enum)]
        family: Family,
        /// d for diamonds; p,q,r,s for the 4-path.
        #[arg(value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        emit_script: bool,
    },
}

fn read(path: &PathBuf, what: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{what} {}: {e}", path.display())))
}

fn load_graph(cli: &Cli) -> Result<DefiningGraph> {
    let path = cli.graph.as_ref().ok_or_else(|| Error::Input("--graph is required".into()))?;
    let text = read(path, "graph")?;
    parse_json::<GraphJson>(&text, &path.display().to_string())?.to_graph()
}

fn load_periph(cli: &Cli, g: &DefiningGraph) -> Result<PeripheralPair> {
    let pp = match &cli.periph {
        None => PeripheralPair::empty(),
        Some(path) => {
            let text = read(path, "peripheral pair")?;
            parse_json::<PeriphJson>(&text, &path.display().to_string())?.to_pair(g)?
        }
    };
    normalize(g, &pp, NormalizeMode::Weak)
}

fn load_script(cli: &Cli) -> Result<Option<Vec<ScriptOp>>> {
    match &cli.script {
        None => Ok(None),
        Some(path) => {
            let text = read(path, "script")?;
            let steps: Vec<StepJson> = parse_json(&text, &path.display().to_string())?;
            Ok(Some(script_from_json(&steps)?))
        }
    }
}

fn sets_json(g: &DefiningGraph, v: &[VSet]) -> Value {
    json!(v.iter().map(|s| g.set_labels(*s)).collect::<Vec<_>>())
}

fn sets_text(g: &DefiningGraph, v: &[VSet]) -> String {
    if v.is_empty() {
        return "(none)".into();
    }
    v.iter().map(|s| g.fmt_set(*s)).collect::<Vec<_>>().join(" ")
}

fn emit(format: Format, text: String, js: Value, dot: Option<String>) -> Result<String> {
    match format {
        Format::Text => Ok(text),
        Format::Json => Ok(serde_json::to_string_pretty(&js).expect("json values serialize") + "\n"),
        Format::Dot => dot.ok_or_else(|| Error::Input("--format dot is not available for this command".into())),
    }
}

fn verdict_text<T>(v: &Verdict<T>) -> &'static str {
    match v {
        Verdict::Yes(_) => "yes",
        Verdict::No => "no",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn run(cli: &Cli) -> Result<String> {
    if let Command::Family { family, sizes, emit_script } = &cli.command {
        let (g, script) = match (family, sizes.as_slice()) {
            (Family::Diamonds, &[d]) if d >= 1 => (families::diamonds(d), families::diamonds_script(d)),
            (Family::FourPath, &[p, q, r, s]) if p.min(q).min(r).min(s) >= 1 => {
                (families::four_path(p, q, r, s), families::four_path_script(p, q, r, s))
            }
            _ => return Err(Error::Input("diamonds takes d >= 1; four-path takes p,q,r,s >= 1".into())),
        };
        let v = if *emit_script {
            serde_json::to_value(raagout_core::io::script_to_json(&script))
        } else {
            serde_json::to_value(GraphJson::from_graph(&g))
        };
        return Ok(serde_json::to_string_pretty(&v.expect("json values serialize")).unwrap() + "\n");
    }

    let g = load_graph(cli)?;
    let pp = load_periph(cli, &g)?;
    let desc = Descriptor::new(g.clone(), pp.clone())?;
    match &cli.command {
        Command::Family { .. } => unreachable!(),
        Command::Info => {
            let dom = domination(&g);
            let vcg = vertex_class_graph(&g);
            let mut text = format!(
                "vertices: {}\nedges: {}\nconnected: {}\ncentre: {}\nclasses:\n",
                g.n(),
                g.edges().len(),
                g.is_connected(g.all()),
                g.fmt_set(g.center_vertices())
            );
            let mut classes = Vec::new();
            for (i, c) in dom.classes.iter().enumerate() {
                let (size, flag) = vcg.coloring[i];
                let kind = if flag == 1 { "free" } else { "abelian" };
                let above: Vec<String> =
                    (0..dom.classes.len()).filter(|&j| j != i && dom.leq(c.first().unwrap(), dom.classes[j].first().unwrap())).map(|j| g.fmt_set(dom.classes[j])).collect();
                text.push_str(&format!("  {} size {size} {kind}; dominated by {}\n", g.fmt_set(*c), if above.is_empty() { "-".to_string() } else { above.join(" ") }));
                classes.push(json!({ "members": g.set_labels(*c), "size": size, "free": flag == 1 }));
            }
            let js = json!({
                "vertices": g.n(),
                "edges": g.edges().len(),
                "connected": g.is_connected(g.all()),
                "centre": g.set_labels(g.center_vertices()),
                "classes": classes,
                "class_graph": vcg.adjacency.iter().map(|a| a.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            emit(cli.format, text, js, Some(class_graph_to_dot(&g, &vcg)))
        }
        Command::Gens { outer } => {
            let gens = if *outer { desc.outer_generators()? } else { desc.generators()? };
            let lines: Vec<String> = gens.iter().map(|x| format_generator(&g, x)).collect();
            let mut text = lines.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            emit(cli.format, text, json!(lines), None)
        }
        Command::Invariant { target } => {
            let delta = g.set_of(target)?;
            let inv = is_invariant(&g, &pp, delta)?;
            let text = format!("{} {}\n", g.fmt_set(delta), if inv { "is invariant" } else { "is not invariant" });
            emit(cli.format, text, json!({ "target": g.set_labels(delta), "invariant": inv }), None)
        }
        Command::Saturate => {
            let sat = saturate(&g, &pp)?;
            let text = format!("G: {}\nH: {}\n", sets_text(&g, &sat.g), sets_text(&g, &sat.h));
            let js = serde_json::to_value(PeriphJson::from_pair(&g, &sat)).expect("json values serialize");
            emit(cli.format, text, js, None)
        }
        Command::Periphery { target, untwisted } => {
            let members = if *untwisted {
                if !target.is_empty() {
                    return Err(Error::Input("--untwisted takes no --target".into()));
                }
                untwisted_periphery(&g)
            } else {
                if target.is_empty() {
                    return Err(Error::Input("--target is required (or pass --untwisted)".into()));
                }
                let delta = g.set_of(target)?;
                let mut with = pp.clone();
                with.g.push(delta);
                with.normalized = false;
                let with = normalize(&g, &with, NormalizeMode::Weak)?;
                fast_periphery(&g, &with, delta)?
            };
            emit(cli.format, sets_text(&g, &members) + "\n", sets_json(&g, &members), None)
        }
        Command::Restrict { target, mode } => {
            let delta = g.set_of(target)?;
            let r = restriction_step(&desc, delta, (*mode).into())?;
            let text = format!(
                "source: {}\nkernel: {}\nimage:  {}\n",
                r.source.summary(),
                r.kernel.summary(),
                r.image.summary()
            );
            let js = json!({
                "source": r.source.to_json(),
                "kernel": r.kernel.to_json(),
                "image": r.image.to_json(),
            });
            emit(cli.format, text, js, None)
        }
        Command::Decompose => {
            let script = load_script(cli)?;
            let tree = decompose(&desc, script.as_deref())?;
            let mut text = String::new();
            write_tree(&tree, 0, &mut text);
            emit(cli.format, text, tree.to_json(), Some(tree.to_dot()))
        }
        Command::Vcd { config, lower, no_lower } => {
            let script = load_script(cli)?;
            let cfg = match config {
                None => DimProviderConfig::default(),
                Some(p) => parse_json::<ConfigJson>(&read(p, "config")?, &p.display().to_string())?.to_config()?,
            };
            let gens = match (lower, no_lower) {
                (_, true) => None,
                (Some(p), false) => Some(
                    read(p, "generator list")?
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(|l| parse_generator(&g, l))
                        .collect::<Result<Vec<_>>>()?,
                ),
                (None, false) => families::known_lower_generators(&g, &pp),
            };
            let (_, bound, cert) = vcd_report(&desc, script.as_deref(), &cfg, gens.as_deref(), cli.box_bound)?;
            let mut text = format!("group: {}\n", desc.summary());
            text.push_str(&format!(
                "upper: {}\n",
                bound.upper.map_or("unknown".to_string(), |u| u.to_string())
            ));
            match &cert {
                Some(c) => text.push_str(&format!(
                    "lower: {} ({} from the action on homology, {} independent generators acting trivially on it; {})\n",
                    c.rank,
                    c.h1_rank,
                    c.ia_rank,
                    if c.abelian { "abelian" } else { "nilpotent" }
                )),
                None => text.push_str("lower: not certified\n"),
            }
            let trivial = bound.per_leaf.iter().filter(|c| c.dim == Some(0)).count();
            for c in bound.per_leaf.iter().filter(|c| c.dim != Some(0)) {
                text.push_str(&format!(
                    "  [{}] {} : {} -> {} ({})\n",
                    c.node,
                    c.group,
                    c.piece,
                    c.dim.map_or("unknown".to_string(), |d| d.to_string()),
                    c.provenance
                ));
            }
            if trivial > 0 {
                text.push_str(&format!("  ({trivial} trivial leaves omitted; see --format json)\n"));
            }
            let mut js = report_json(&bound, cert.as_ref());
            js["group"] = json!(desc.summary());
            emit(cli.format, text, js, None)
        }
        Command::ConeGraph => {
            let cg = cone_graph(&g, &pp.g);
            let js = serde_json::to_value(GraphJson::from_graph(&cg)).expect("json values serialize");
            let text = format!(
                "vertices: {}\nedges: {}\n",
                cg.labels().join(" "),
                cg.edge_labels().iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
            );
            emit(cli.format, text, js, Some(graph_to_dot(&cg)))
        }
        Command::Apply { gens, word } => {
            let mut phi = Automorphism::identity(g.n());
            for s in gens {
                phi = compose(&g, &phi, &realize(&g, &parse_generator(&g, s)?)?);
            }
            let images: Vec<String> = phi.forward.iter().map(|w| format_word(&g, w)).collect();
            let inner = is_inner(&g, &phi);
            let out0 = out0_membership(&g, &phi)?;
            let mut text = String::new();
            for (v, img) in images.iter().enumerate() {
                text.push_str(&format!("{} -> {img}\n", g.label(v)));
            }
            let applied = match word {
                Some(w) => {
                    let w = parse_word(&g, w)?;
                    let img = format_word(&g, &raagout_core::autos::apply(&g, &phi, &w));
                    text.push_str(&format!("word -> {img}\n"));
                    Some(img)
                }
                None => None,
            };
            let witness = match &inner {
                Verdict::Yes(c) => Some(format_word(&g, c)),
                _ => None,
            };
            text.push_str(&format!("inner: {}", verdict_text(&inner)));
            if let Some(c) = &witness {
                text.push_str(&format!(" (conjugation by {c})"));
            }
            text.push_str(&format!("\nin Out0: {}\n", if out0 { "yes" } else { "no" }));
            let js = json!({
                "images": g.labels().iter().cloned().zip(images.iter().map(|s| json!(s))).collect::<serde_json::Map<String, Value>>(),
                "word": applied,
                "inner": verdict_text(&inner),
                "conjugator": witness,
                "out0": out0,
            });
            emit(cli.format, text, js, None)
        }
        Command::CheckExact { target, mode, sample } => {
            let mut targets = if target.is_empty() {
                let sat = saturate(&g, &pp)?;
                let sd = Descriptor::new(g.clone(), sat.clone())?;
                let mut t = Vec::new();
                for &d in &sat.g {
                    if has_nontrivial_restriction(&sd, d)? {
                        t.push(d);
                    }
                }
                t
            } else {
                vec![g.set_of(target)?]
            };
            if let Some(k) = sample {
                targets.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed));
                targets.truncate(*k);
            }
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut all = true;
            for delta in targets {
                let step = restriction_step(&desc, delta, (*mode).into())?;
                let rep = check_exactness(&step)?;
                all &= rep.all_pass();
                text.push_str(&format!("target {} ({})\n", g.fmt_set(delta), step.image.summary()));
                let ig = &step.image.graph;
                let mut lifts = Vec::new();
                for (gen, lift, ok) in &rep.lifts {
                    let (a, b) = (format_generator(ig, gen), format_generator(&g, lift));
                    text.push_str(&format!("  lift {a} -> {b}: {}\n", if *ok { "pass" } else { "FAIL" }));
                    lifts.push(json!({ "image": a, "lift": b, "pass": ok }));
                }
                let mut kernel = Vec::new();
                for (gen, ok) in &rep.kernel {
                    let a = format_generator(&g, gen);
                    text.push_str(&format!("  kernel {a}: {}\n", if *ok { "pass" } else { "FAIL" }));
                    kernel.push(json!({ "generator": a, "pass": ok }));
                }
                reports.push(json!({ "target": g.set_labels(delta), "lifts": lifts, "kernel": kernel }));
            }
            text.push_str(if all { "all pass\n" } else { "FAILURES\n" });
            let out = emit(cli.format, text, json!({ "steps": reports, "all_pass": all }), None)?;
            if !all {
                print!("{out}");
                return Err(Error::Internal("exactness check failed".into()));
            }
            Ok(out)
        }
    }
}

fn write_tree(n: &raagout_core::Node, depth: usize, out: &mut String) {
    use raagout_core::Step;
    let g = &n.desc.graph;
    let pad = "  ".repeat(depth);
    match &n.step {
        Step::Restrict { target, mode, kernel, image } => {
            out.push_str(&format!("{pad}[{}] {} : restrict to {} ({})\n", n.id, n.desc.summary(), g.fmt_set(*target), mode.name()));
            write_tree(kernel, depth + 1, out);
            write_tree(image, depth + 1, out);
        }
        Step::Project { center, kernel_rank, image } => {
            out.push_str(&format!(
                "{pad}[{}] {} : project away {} (kernel Z^{kernel_rank})\n",
                n.id,
                n.desc.summary(),
                g.fmt_set(*center)
            ));
            write_tree(image, depth + 1, out);
        }
        Step::Leaf(l) => out.push_str(&format!("{pad}[{}] {} : {}\n", n.id, n.desc.summary(), l.describe(g))),
    }
}

fn main() -> ExitCode {
    // usage errors are input errors (exit 1); 2 is reserved for capability limits
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capability(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
