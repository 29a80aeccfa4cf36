//! Command-line front end. Graphs are read as graph6 or JSON (`-` is stdin).
//! Exit codes: 0 ok, 1 usage or I/O problems, 2 the input is outside the
//! class (witness JSON on stdout), 3 a structural check of a construction
//! failed.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use trifree_cw::c5::{decompose_p1p5, decompose_p2p4, report_problems, ComponentKind, DecompositionReport};
use trifree_cw::curious::{block_structure, curious_type, slice_type01, slice_type23};
use trifree_cw::cwx::{exact_cw_expr, CwExpr, OracleConfig, DEFAULT_ORACLE_CAP};
use trifree_cw::io::{parse_graph, to_graph6, to_json, GraphJson};
use trifree_cw::modules::{MdKind, MdTree};
use trifree_cw::patterns::{find_induced_cycle, find_pattern, Pattern};
use trifree_cw::pipeline::{
    build_cw, enumerate_small, gen_class_random, gen_with_c5, membership, random_uniform_spec, ClassName, ClassSpec,
};
use trifree_cw::uniform::realize;
use trifree_cw::wqo::{labelled_embedding, LabelledGraphW, Poset};
use trifree_cw::{Error, Graph, VertexId};

#[derive(Parser)]
#[command(name = "trifree-cw", version, about = "Clique-width expressions for (K3,P2+P4)- and (K3,P1+P5)-free graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test class membership; prints the first forbidden induced subgraph found.
    Check {
        file: PathBuf,
        #[arg(long)]
        class: ClassSpec,
        /// Also look for these patterns (P5, C6, S1,2,3, 2P2, ...).
        #[arg(long = "pattern")]
        patterns: Vec<Pattern>,
    },
    /// Run the C5 decomposition on the input or on its prime quotients.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        class: ClassSpec,
        /// Print the full reports as JSON instead of a summary.
        #[arg(long)]
        emit_json: bool,
        /// Print the slicing of every curious piece as JSON.
        #[arg(long)]
        emit_slices: bool,
    },
    /// Build and verify a clique-width expression.
    CwBuild {
        file: PathBuf,
        #[arg(long)]
        class: ClassSpec,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        /// Include the construction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Check that an expression (JSON) evaluates to a graph.
    CwVerify { expr_file: PathBuf, graph_file: PathBuf },
    /// Exact clique-width by exhaustive search.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
        #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
        format: Format,
    },
    /// Embed labelled graph `g` into `h` as an induced subgraph whose labels
    /// only go up in the poset.
    Embed {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        poset: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random class member: G(n, p) with forbidden subgraphs broken by deletion.
    Random {
        #[arg(long)]
        class: ClassSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Class member containing an induced C5.
    C5 {
        #[arg(long)]
        class: ClassSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every graph on n vertices up to isomorphism, one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: Option<ClassSpec>,
    },
    /// Random k-uniform graph with m copies of each class.
    Uniform {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The cycle C_n.
    Cycle {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

/// A graph file for `embed`: any graph, optionally with a `labels` map from
/// vertex id to poset element name.
#[derive(Deserialize)]
struct LabelledJson {
    #[serde(flatten)]
    graph: GraphJson,
    #[serde(default)]
    labels: BTreeMap<u32, String>,
}

enum Failure {
    NotMember(serde_json::Value),
    Claim(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(Error::NotMember(w)) => Failure::NotMember(json!({ "member": false, "witness": w })),
            Ok(e @ Error::Claim { .. }) => Failure::Claim(e.to_string()),
            Ok(e) => Failure::Other(e.into()),
            Err(e) => Failure::Other(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(s)
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    parse_graph(read_text(path)?.trim()).with_context(|| format!("parsing {}", path.display()))
}

fn print_graph(g: &Graph, f: Format) {
    match f {
        Format::Json => println!("{}", to_json(g)),
        Format::Graph6 => println!("{}", to_graph6(g)),
    }
}

fn decompose(g: &Graph, cls: &ClassSpec) -> trifree_cw::Result<DecompositionReport> {
    match cls.name {
        ClassName::P1P5 => decompose_p1p5(g),
        ClassName::P2P4 => decompose_p2p4(g),
    }
}

/// Graphs the decomposition is run on: the input itself when it meets the
/// precondition, else every prime quotient with an induced C5.
fn decomposition_targets(g: &Graph, cls: &ClassSpec) -> Vec<Graph> {
    let whole = match cls.name {
        ClassName::P1P5 => g.is_connected(),
        ClassName::P2P4 => g.is_prime(),
    };
    if whole && find_induced_cycle(g, 5).is_some() {
        return vec![g.clone()];
    }
    g.modular_decomposition()
        .internal_nodes()
        .into_iter()
        .filter_map(|t| match t {
            MdTree::Internal { kind: MdKind::Prime, quotient, .. } if find_induced_cycle(quotient, 5).is_some() => {
                Some(quotient.clone())
            }
            _ => None,
        })
        .collect()
}

fn slices_json(r: &DecompositionReport) -> trifree_cw::Result<Vec<serde_json::Value>> {
    let mut out = Vec::new();
    for (i, c) in r.components.iter().enumerate() {
        let ComponentKind::Curious { partition } = &c.kind else { continue };
        let t = curious_type(&c.graph, partition)?;
        let entry = if t <= 1 {
            json!({ "component": i, "type": t, "slices": slice_type01(&c.graph, partition)? })
        } else {
            json!({
                "component": i,
                "type": t,
                "slices": slice_type23(&c.graph, partition)?,
                "blocks": block_structure(&c.graph, partition)?,
            })
        };
        out.push(entry);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Check { file, class, patterns } => {
            let g = read_graph(&file)?;
            if let Some(w) = membership(&g, &class) {
                return Err(Failure::NotMember(json!({ "member": false, "class": class.to_string(), "witness": w })));
            }
            let found: Vec<_> = patterns.iter().filter_map(|p| find_pattern(&g, p)).collect();
            println!("{}", json!({ "member": true, "class": class.to_string(), "patterns": found }));
        }
        Cmd::Decompose { file, class, emit_json, emit_slices } => {
            let g = read_graph(&file)?;
            if let Some(w) = membership(&g, &class) {
                return Err(Failure::NotMember(json!({ "member": false, "class": class.to_string(), "witness": w })));
            }
            let targets = decomposition_targets(&g, &class);
            if targets.is_empty() {
                return Err(Failure::Other(anyhow::anyhow!("no prime quotient contains an induced C5; nothing to decompose")));
            }
            let mut reports = Vec::new();
            for h in &targets {
                let r = decompose(h, &class)?;
                let problems = report_problems(h, &r);
                if !problems.is_empty() {
                    return Err(Failure::Claim(format!("report does not check out: {}", problems.join("; "))));
                }
                reports.push(r);
            }
            if emit_json {
                println!("{}", serde_json::to_string_pretty(&reports).map_err(anyhow::Error::from)?);
            }
            if emit_slices {
                let all = reports.iter().map(slices_json).collect::<trifree_cw::Result<Vec<_>>>()?;
                println!("{}", serde_json::to_string_pretty(&all).map_err(anyhow::Error::from)?);
            }
            if !emit_json && !emit_slices {
                for (h, r) in targets.iter().zip(&reports) {
                    let c = r.edit_log.counts;
                    println!(
                        "{} vertices: {} deletions, {} bipartite complementations, {} curious, {} 3-uniform",
                        h.n(),
                        c.deletions,
                        c.bipartite_complementations,
                        r.curious_count(),
                        r.three_uniform_count()
                    );
                    for s in r.stages.iter().filter(|s| s.counts != Default::default()) {
                        println!("  {}: {} deletions, {} complementations", s.name, s.counts.deletions, s.counts.bipartite_complementations);
                    }
                }
            }
        }
        Cmd::CwBuild { file, class, oracle_cap, trace } => {
            let g = read_graph(&file)?;
            let r = build_cw(&g, &class, oracle_cap)?;
            let out = if trace { serde_json::to_value(&r) } else { serde_json::to_value(json!({ "width": r.width, "expr": r.expr })) };
            println!("{}", out.map_err(anyhow::Error::from)?);
        }
        Cmd::CwVerify { expr_file, graph_file } => {
            // Accepts a bare expression or the output of `cw-build`.
            let v: serde_json::Value = serde_json::from_str(&read_text(&expr_file)?).context("parsing expression")?;
            let v = if v.get("expr").is_some() { v["expr"].clone() } else { v };
            let e: CwExpr = serde_json::from_value(v).context("parsing expression")?;
            let g = read_graph(&graph_file)?;
            if !e.verify(&g) {
                return Err(Failure::Other(anyhow::anyhow!("expression does not evaluate to the graph")));
            }
            println!("{}", json!({ "ok": true, "width": e.width() }));
        }
        Cmd::Oracle { file, kmax, cap } => {
            let g = read_graph(&file)?;
            let out = match exact_cw_expr(&g, kmax, OracleConfig { max_vertices: cap })? {
                Some((k, e)) => json!({ "cw": k, "expr": e }),
                None => json!({ "cw": null, "above": kmax }),
            };
            println!("{out}");
        }
        Cmd::Gen { what, format } => match what {
            GenCmd::Random { class, n, p, seed } => print_graph(&gen_class_random(&class, n, p, seed), format),
            GenCmd::C5 { class, n, seed } => print_graph(&gen_with_c5(&class, n, seed)?, format),
            GenCmd::Enumerate { n, class } => {
                for g in enumerate_small(n, class.as_ref())? {
                    print_graph(&g, format);
                }
            }
            GenCmd::Uniform { k, m, seed } => print_graph(&realize(&random_uniform_spec(k, m, seed))?, format),
            GenCmd::Cycle { n } => print_graph(&Pattern::cycle(n).graph, format),
        },
        Cmd::Embed { g, h, poset } => {
            let p = match poset {
                Some(f) => Poset::from_json(&read_text(&f)?)?,
                None => Poset::trivial(),
            };
            let lg = read_labelled(&g, &p)?;
            let lh = read_labelled(&h, &p)?;
            let m = labelled_embedding(&lg, &lh, &p)?;
            println!("{}", json!({ "embeds": m.is_some(), "map": m }));
        }
    }
    Ok(())
}

fn read_labelled(path: &Path, p: &Poset) -> anyhow::Result<LabelledGraphW> {
    let text = read_text(path)?;
    if !text.trim_start().starts_with('{') {
        let g = parse_graph(text.trim())?;
        return Ok(LabelledGraphW::uniform(g));
    }
    let raw: LabelledJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let g: Graph = raw.graph.try_into()?;
    if raw.labels.is_empty() {
        return Ok(LabelledGraphW::uniform(g));
    }
    let mut labels = BTreeMap::new();
    for &v in g.vertices() {
        let Some(name) = raw.labels.get(&v.0) else { bail!("vertex {v} has no label") };
        let Some(i) = p.index_of(name) else { bail!("label {name:?} is not in the poset") };
        labels.insert(VertexId(v.0), i);
    }
    Ok(LabelledGraphW::new(g, labels)?)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotMember(w)) => {
            println!("{w}");
            ExitCode::from(2)
        }
        Err(Failure::Claim(msg)) => {
            eprintln!("claim violated: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
