//! End-to-end construction for the two classes: modular decomposition, then a
//! case split on every prime quotient (C7, C5 decomposition, bipartite), then
//! substitution back up the tree.

mod canon;
mod gen;
mod stitch;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use canon::{canonical_form, enumerate_small, ENUMERATION_CAP};
pub use gen::{gen_class_random, gen_with_c5, random_curious, random_sliced, random_uniform_spec};
pub use stitch::{stitch, StitchStats};

use crate::c5::{decompose_p1p5, decompose_p2p4, ComponentKind, DecompositionReport};
use crate::curious::curious_cw;
use crate::cwx::{exact_cw_expr, naive_expr, substitute, CwExpr, OracleConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::modules::{MdKind, MdTree};
use crate::patterns::{find_induced_cycle, first_witness, Pattern, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassName {
    #[serde(rename = "K3,P2+P4")]
    P2P4,
    #[serde(rename = "K3,P1+P5")]
    P1P5,
}

/// One of the two classes, with its forbidden induced subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub name: ClassName,
    pub forbidden: Vec<Pattern>,
}

impl ClassSpec {
    pub fn p2p4() -> ClassSpec {
        ClassSpec { name: ClassName::P2P4, forbidden: vec![Pattern::k3(), Pattern::p2_p4()] }
    }

    pub fn p1p5() -> ClassSpec {
        ClassSpec { name: ClassName::P1P5, forbidden: vec![Pattern::k3(), Pattern::p1_p5()] }
    }

    pub fn all() -> [ClassSpec; 2] {
        [ClassSpec::p2p4(), ClassSpec::p1p5()]
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.name {
            ClassName::P2P4 => "K3,P2+P4",
            ClassName::P1P5 => "K3,P1+P5",
        })
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    /// Accepts `K3,P2+P4` / `K3,P1+P5`, spaces and case ignored, and the short
    /// forms `p2p4` / `p1p5`.
    fn from_str(s: &str) -> Result<ClassSpec> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
        match key.as_str() {
            "K3,P2+P4" | "P2+P4" | "P2P4" => Ok(ClassSpec::p2p4()),
            "K3,P1+P5" | "P1+P5" | "P1P5" => Ok(ClassSpec::p1p5()),
            _ => Err(Error::Precondition(format!("unknown class {s:?}; expected \"K3,P2+P4\" or \"K3,P1+P5\""))),
        }
    }
}

/// `None` iff `g` is in the class; otherwise the first forbidden induced
/// subgraph found.
pub fn membership(g: &Graph, cls: &ClassSpec) -> Option<Witness> {
    first_witness(g, &cls.forbidden)
}

pub fn is_member(g: &Graph, cls: &ClassSpec) -> bool {
    membership(g, cls).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeCase {
    C7,
    C5Decomposition,
    Bipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafSource {
    /// Exact oracle.
    Oracle,
    /// One label per vertex, used above the oracle cap.
    Naive,
    /// 3-uniform piece of a C5 decomposition.
    Uniform,
    /// A vertex deleted by a C5 decomposition and re-attached by stitching.
    Reattached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafTrace {
    /// Index into [`Trace::primes`].
    pub prime: usize,
    pub vertices: Vec<VertexId>,
    pub source: LeafSource,
    pub width: usize,
    pub unbounded_leaf: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTrace {
    /// Vertices of the prime quotient (each stands for a module of the input).
    pub vertices: Vec<VertexId>,
    pub case: PrimeCase,
    pub report: Option<DecompositionReport>,
    pub stitch: Option<StitchStats>,
    /// Width of the expression assembled from the case analysis.
    pub constructed_width: usize,
    /// Exact clique-width when the quotient is within the oracle cap.
    pub oracle_width: Option<usize>,
    /// Width of the expression actually substituted into the tree.
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub class: ClassName,
    pub tree: MdTree,
    pub primes: Vec<PrimeTrace>,
    pub leaves: Vec<LeafTrace>,
}

impl Trace {
    pub fn has_unbounded_leaf(&self) -> bool {
        self.leaves.iter().any(|l| l.unbounded_leaf)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineResult {
    pub expr: CwExpr,
    pub width: usize,
    pub trace: Trace,
}

/// Verified expression for a class member.
///
/// Prime quotients within `oracle_cap` also get an exact expression, and the
/// narrower of the two is used; the constructed one is always built and
/// checked first, and both widths are kept in the trace.
pub fn build_cw(g: &Graph, cls: &ClassSpec, oracle_cap: usize) -> Result<PipelineResult> {
    if let Some(w) = membership(g, cls) {
        return Err(Error::NotMember(w));
    }
    if g.is_empty() {
        return Err(Error::Precondition("empty graph has no expression".into()));
    }
    let tree = g.modular_decomposition();
    let mut b = Builder { cls, cap: oracle_cap, primes: Vec::new(), leaves: Vec::new() };
    let expr = b.node(&tree)?.compact_labels();
    if !expr.verify(g) {
        return Err(Error::claim("pipeline", "final expression does not evaluate to the input", vec![]));
    }
    let trace = Trace { class: cls.name, tree, primes: b.primes, leaves: b.leaves };
    Ok(PipelineResult { width: expr.width(), expr, trace })
}

struct Builder<'a> {
    cls: &'a ClassSpec,
    cap: usize,
    primes: Vec<PrimeTrace>,
    leaves: Vec<LeafTrace>,
}

impl Builder<'_> {
    fn node(&mut self, t: &MdTree) -> Result<CwExpr> {
        let MdTree::Internal { kind, quotient, children } = t else {
            return Ok(CwExpr::v(1, t.representative()));
        };
        let mut parts = BTreeMap::new();
        for c in children {
            parts.insert(c.representative(), self.node(c)?);
        }
        let q = match kind {
            MdKind::Parallel => CwExpr::union_all(quotient.vertices().iter().map(|&v| CwExpr::v(1, v))),
            MdKind::Series => {
                let vs = quotient.vertices();
                let chain = vs[1..].iter().fold(CwExpr::v(1, vs[0]), |e, &v| CwExpr::union(e, CwExpr::v(2, v)).join(1, 2).relabel(2, 1));
                Some(chain)
            }
            MdKind::Prime => Some(self.prime(quotient)?),
        }
        .expect("internal nodes have children");
        substitute(&q, &parts)
    }

    fn leaf(&self, h: &Graph) -> Result<(CwExpr, LeafSource)> {
        if h.n() <= self.cap {
            let (_, e) = exact_cw_expr(h, h.n(), OracleConfig { max_vertices: self.cap })?
                .ok_or_else(|| Error::Expr("oracle found no expression within n labels".into()))?;
            return Ok((e.expect("nonempty leaf"), LeafSource::Oracle));
        }
        Ok((naive_expr(h).expect("nonempty leaf"), LeafSource::Naive))
    }

    fn record(&mut self, prime: usize, vertices: VertexSet, source: LeafSource, width: usize) {
        let unbounded_leaf = source == LeafSource::Naive;
        self.leaves.push(LeafTrace { prime, vertices: vertices.into_iter().collect(), source, width, unbounded_leaf });
    }

    fn prime(&mut self, q: &Graph) -> Result<CwExpr> {
        let idx = self.primes.len();
        // C5 comes first: the decompositions do not exclude C7, and only
        // C5-free prime members with a C7 are forced to be the C7 itself.
        let (case, report, stitch_stats, built) = if find_induced_cycle(q, 5).is_some() {
            let report = match self.cls.name {
                ClassName::P1P5 => decompose_p1p5(q)?,
                ClassName::P2P4 => decompose_p2p4(q)?,
            };
            let mut pieces = Vec::new();
            for c in &report.components {
                match &c.kind {
                    ComponentKind::Curious { partition } => {
                        let mut found = Vec::new();
                        let e = curious_cw(&c.graph, partition, &mut |h: &Graph| {
                            let (e, src) = self.leaf(h)?;
                            found.push((h.vertex_set(), src, e.width()));
                            Ok(e)
                        })?;
                        for (vs, src, w) in found {
                            self.record(idx, vs, src, w);
                        }
                        pieces.push(e);
                    }
                    ComponentKind::ThreeUniform { recognition } => {
                        let e = recognition.expr()?;
                        self.record(idx, c.graph.vertex_set(), LeafSource::Uniform, e.width());
                        pieces.push(e);
                    }
                }
            }
            let (e, stats) = stitch(q, &report.edit_log, &pieces)?;
            for op in &report.edit_log.ops {
                if let crate::edit::EditOp::VertexDeletion { vertex } = op {
                    self.record(idx, [*vertex].into(), LeafSource::Reattached, 1);
                }
            }
            (PrimeCase::C5Decomposition, Some(report), Some(stats), e)
        } else if let Some(w) = find_induced_cycle(q, 7) {
            if q.n() != 7 {
                return Err(Error::claim(
                    "C5-free prime graph with an induced C7 is the C7",
                    format!("prime quotient on {} vertices properly contains an induced C7", q.n()),
                    w.host_vertices(),
                ));
            }
            let (e, src) = self.leaf(q)?;
            self.record(idx, q.vertex_set(), src, e.width());
            (PrimeCase::C7, None, None, e)
        } else {
            if q.bipartition().is_none() {
                return Err(Error::claim(
                    "prime graph without C5 or C7 is bipartite",
                    "odd cycle in a prime quotient with no induced C5 or C7",
                    q.vertices().to_vec(),
                ));
            }
            let (e, src) = self.leaf(q)?;
            self.record(idx, q.vertex_set(), src, e.width());
            (PrimeCase::Bipartite, None, None, e)
        };
        let constructed_width = built.width();
        let mut chosen = built;
        let mut oracle_width = None;
        if q.n() <= self.cap {
            if let Some((k, Some(e))) = exact_cw_expr(q, constructed_width, OracleConfig { max_vertices: self.cap })? {
                oracle_width = Some(k);
                if k < constructed_width {
                    chosen = e;
                }
            }
        }
        self.primes.push(PrimeTrace {
            vertices: q.vertices().to_vec(),
            case,
            report,
            stitch: stitch_stats,
            constructed_width,
            oracle_width,
            width: chosen.width(),
        });
        Ok(chosen)
    }
}
