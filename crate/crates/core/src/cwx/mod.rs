//! Clique-width expressions: construction, evaluation, width, verification,
//! term syntax, and module substitution.

mod oracle;
mod term;

pub use oracle::{exact_cw, exact_cw_expr, OracleConfig, DEFAULT_ORACLE_CAP, MAX_ORACLE_CAP};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CwExpr {
    Create { label: Label, vertex: VertexId },
    Union { left: Box<CwExpr>, right: Box<CwExpr> },
    Join { i: Label, j: Label, inner: Box<CwExpr> },
    Relabel { from: Label, to: Label, inner: Box<CwExpr> },
}

/// Value of an expression: a graph whose vertices carry labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: Graph,
    pub label_of: BTreeMap<VertexId, Label>,
}

impl CwExpr {
    pub fn v(label: Label, vertex: impl Into<VertexId>) -> CwExpr {
        CwExpr::Create { label, vertex: vertex.into() }
    }

    pub fn union(left: CwExpr, right: CwExpr) -> CwExpr {
        CwExpr::Union { left: Box::new(left), right: Box::new(right) }
    }

    /// Left-nested union of a nonempty list.
    pub fn union_all(parts: impl IntoIterator<Item = CwExpr>) -> Option<CwExpr> {
        parts.into_iter().reduce(CwExpr::union)
    }

    pub fn join(self, i: Label, j: Label) -> CwExpr {
        CwExpr::Join { i, j, inner: Box::new(self) }
    }

    pub fn relabel(self, from: Label, to: Label) -> CwExpr {
        CwExpr::Relabel { from, to, inner: Box::new(self) }
    }

    /// Number of distinct labels mentioned anywhere in the expression.
    pub fn width(&self) -> usize {
        self.labels().len()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| match e {
            CwExpr::Create { label, .. } => {
                out.insert(*label);
            }
            CwExpr::Join { i, j, .. } => {
                out.insert(*i);
                out.insert(*j);
            }
            CwExpr::Relabel { from, to, .. } => {
                out.insert(*from);
                out.insert(*to);
            }
            CwExpr::Union { .. } => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&CwExpr)) {
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            f(e);
            match e {
                CwExpr::Create { .. } => {}
                CwExpr::Union { left, right } => {
                    stack.push(right);
                    stack.push(left);
                }
                CwExpr::Join { inner, .. } | CwExpr::Relabel { inner, .. } => stack.push(inner),
            }
        }
    }

    /// Created vertices in left-to-right order.
    pub fn vertex_list(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let CwExpr::Create { vertex, .. } = e {
                out.push(*vertex);
            }
        });
        out
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertex_list().into_iter().collect()
    }

    /// Labels of the vertices after the whole expression is applied.
    pub fn final_labels(&self) -> BTreeMap<VertexId, Label> {
        match self {
            CwExpr::Create { label, vertex } => BTreeMap::from([(*vertex, *label)]),
            CwExpr::Union { left, right } => {
                let mut m = left.final_labels();
                m.extend(right.final_labels());
                m
            }
            CwExpr::Join { inner, .. } => inner.final_labels(),
            CwExpr::Relabel { from, to, inner } => {
                let mut m = inner.final_labels();
                m.values_mut().filter(|l| **l == *from).for_each(|l| *l = *to);
                m
            }
        }
    }

    pub fn evaluate(&self) -> Result<LabelledGraph> {
        let (labels, edges) = eval(self)?;
        let graph = Graph::new(labels.keys().copied(), edges).expect("evaluated edges are between created vertices");
        Ok(LabelledGraph { graph, label_of: labels })
    }

    /// True iff the expression evaluates to exactly `g` (same ids, same edges).
    pub fn verify(&self, g: &Graph) -> bool {
        self.evaluate().is_ok_and(|lg| lg.graph == *g)
    }

    /// Applies `f` to every label. `f` must keep join and relabel pairs distinct.
    pub fn map_labels(&self, f: &impl Fn(Label) -> Label) -> CwExpr {
        match self {
            CwExpr::Create { label, vertex } => CwExpr::Create { label: f(*label), vertex: *vertex },
            CwExpr::Union { left, right } => CwExpr::union(left.map_labels(f), right.map_labels(f)),
            CwExpr::Join { i, j, inner } => inner.map_labels(f).join(f(*i), f(*j)),
            CwExpr::Relabel { from, to, inner } => inner.map_labels(f).relabel(f(*from), f(*to)),
        }
    }

    /// Renames labels to `1..=width` preserving their order.
    pub fn compact_labels(&self) -> CwExpr {
        let map: BTreeMap<Label, Label> = self.labels().into_iter().zip(1..).collect();
        self.map_labels(&|l| map[&l])
    }

    pub fn map_vertices(&self, f: &impl Fn(VertexId) -> VertexId) -> CwExpr {
        match self {
            CwExpr::Create { label, vertex } => CwExpr::Create { label: *label, vertex: f(*vertex) },
            CwExpr::Union { left, right } => CwExpr::union(left.map_vertices(f), right.map_vertices(f)),
            CwExpr::Join { i, j, inner } => inner.map_vertices(f).join(*i, *j),
            CwExpr::Relabel { from, to, inner } => inner.map_vertices(f).relabel(*from, *to),
        }
    }

    /// Expression for the subgraph induced by `keep`: drops the other leaves and
    /// collapses unions left with one side. `None` if nothing is kept.
    pub fn restrict(&self, keep: &VertexSet) -> Option<CwExpr> {
        match self {
            CwExpr::Create { vertex, .. } => keep.contains(vertex).then(|| self.clone()),
            CwExpr::Union { left, right } => match (left.restrict(keep), right.restrict(keep)) {
                (Some(a), Some(b)) => Some(CwExpr::union(a, b)),
                (a, b) => a.or(b),
            },
            CwExpr::Join { i, j, inner } => inner.restrict(keep).map(|e| e.join(*i, *j)),
            CwExpr::Relabel { from, to, inner } => inner.restrict(keep).map(|e| e.relabel(*from, *to)),
        }
    }

    /// Appends relabels sending every final label to `target`.
    pub fn collapse_to(self, target: Label) -> CwExpr {
        let finals: BTreeSet<Label> = self.final_labels().into_values().collect();
        finals.into_iter().filter(|&l| l != target).fold(self, |e, l| e.relabel(l, target))
    }

    /// Appends relabels realising the map `f` on the final labels (labels not
    /// in `f` stay put). Fails when `f` permutes labels cyclically, which would
    /// need a spare label.
    pub fn relabel_finals(self, f: &BTreeMap<Label, Label>) -> Result<CwExpr> {
        let finals: BTreeSet<Label> = self.final_labels().into_values().collect();
        let mut pending: Vec<(Label, Label)> =
            finals.iter().filter_map(|&l| f.get(&l).filter(|&&t| t != l).map(|&t| (l, t))).collect();
        let mut e = self;
        while !pending.is_empty() {
            // Once a target is no longer a pending source, whatever holds it
            // is meant to end there too, so merging into it is safe.
            let pos = pending
                .iter()
                .position(|&(_, t)| !pending.iter().any(|&(s, _)| s == t))
                .ok_or_else(|| Error::Expr("cyclic relabelling needs a spare label".into()))?;
            let (s, t) = pending.remove(pos);
            e = e.relabel(s, t);
        }
        Ok(e)
    }

    pub fn depth(&self) -> usize {
        match self {
            CwExpr::Create { .. } => 1,
            CwExpr::Union { left, right } => 1 + left.depth().max(right.depth()),
            CwExpr::Join { inner, .. } | CwExpr::Relabel { inner, .. } => 1 + inner.depth(),
        }
    }
}

type EvalOut = (BTreeMap<VertexId, Label>, Vec<(VertexId, VertexId)>);

fn eval(e: &CwExpr) -> Result<EvalOut> {
    match e {
        CwExpr::Create { label, vertex } => {
            if *label == 0 {
                return Err(Error::Expr("labels are positive".into()));
            }
            Ok((BTreeMap::from([(*vertex, *label)]), Vec::new()))
        }
        CwExpr::Union { left, right } => {
            let (mut la, mut ea) = eval(left)?;
            let (lb, eb) = eval(right)?;
            for (v, l) in lb {
                if la.insert(v, l).is_some() {
                    return Err(Error::DuplicateVertex(v));
                }
            }
            ea.extend(eb);
            Ok((la, ea))
        }
        CwExpr::Join { i, j, inner } => {
            if i == j || *i == 0 || *j == 0 {
                return Err(Error::Expr(format!("join({i},{j}) needs two distinct positive labels")));
            }
            let (labels, mut edges) = eval(inner)?;
            let a: Vec<VertexId> = labels.iter().filter(|(_, l)| *l == i).map(|(v, _)| *v).collect();
            let b: Vec<VertexId> = labels.iter().filter(|(_, l)| *l == j).map(|(v, _)| *v).collect();
            for &x in &a {
                for &y in &b {
                    edges.push((x, y));
                }
            }
            Ok((labels, edges))
        }
        CwExpr::Relabel { from, to, inner } => {
            if from == to || *from == 0 || *to == 0 {
                return Err(Error::Expr(format!("rel({from}->{to}) needs two distinct positive labels")));
            }
            let (mut labels, edges) = eval(inner)?;
            labels.values_mut().filter(|l| **l == *from).for_each(|l| *l = *to);
            Ok((labels, edges))
        }
    }
}

impl fmt::Display for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CwExpr::Create { label, vertex } => write!(f, "v({label},{vertex})"),
            CwExpr::Union { left, right } => write!(f, "un({left}, {right})"),
            CwExpr::Join { i, j, inner } => write!(f, "join({i},{j}, {inner})"),
            CwExpr::Relabel { from, to, inner } => write!(f, "rel({from}->{to}, {inner})"),
        }
    }
}

impl std::str::FromStr for CwExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<CwExpr> {
        term::parse(s)
    }
}

/// Expression for the graph obtained from the quotient by replacing each
/// listed leaf with the corresponding part. Each part is collapsed onto the
/// label of the leaf it replaces; leaves without a part stay single vertices.
pub fn substitute(quotient: &CwExpr, parts: &BTreeMap<VertexId, CwExpr>) -> Result<CwExpr> {
    let leaves = quotient.vertices();
    if let Some(v) = parts.keys().find(|v| !leaves.contains(v)) {
        return Err(Error::Expr(format!("quotient has no leaf {v}")));
    }
    let compact: BTreeMap<VertexId, CwExpr> = parts.iter().map(|(v, e)| (*v, e.compact_labels())).collect();
    Ok(replace_leaves(&quotient.compact_labels(), &compact))
}

fn replace_leaves(e: &CwExpr, parts: &BTreeMap<VertexId, CwExpr>) -> CwExpr {
    match e {
        CwExpr::Create { label, vertex } => match parts.get(vertex) {
            Some(p) => p.clone().collapse_to(*label),
            None => e.clone(),
        },
        CwExpr::Union { left, right } => CwExpr::union(replace_leaves(left, parts), replace_leaves(right, parts)),
        CwExpr::Join { i, j, inner } => replace_leaves(inner, parts).join(*i, *j),
        CwExpr::Relabel { from, to, inner } => replace_leaves(inner, parts).relabel(*from, *to),
    }
}

/// One-label-per-vertex expression: every vertex keeps its own label and every
/// edge gets its own join. Width equals the vertex count.
pub fn naive_expr(g: &Graph) -> Option<CwExpr> {
    let label: BTreeMap<VertexId, Label> = g.vertices().iter().copied().zip(1..).collect();
    let base = CwExpr::union_all(g.vertices().iter().map(|&v| CwExpr::v(label[&v], v)))?;
    Some(g.edges().into_iter().fold(base, |e, (a, b)| e.join(label[&a], label[&b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn p4_expr() -> CwExpr {
        let ab = CwExpr::union(CwExpr::v(1, 0), CwExpr::v(2, 1)).join(1, 2).relabel(1, 3);
        let abc = CwExpr::union(ab, CwExpr::v(1, 2)).join(1, 2).relabel(2, 3);
        CwExpr::union(abc, CwExpr::v(2, 3)).join(1, 2)
    }

    #[test]
    fn evaluate_small() {
        let e = CwExpr::union(CwExpr::v(1, 0), CwExpr::v(2, 1)).join(1, 2);
        let lg = e.evaluate().unwrap();
        assert_eq!(lg.graph.edge_count(), 1);
        let e2 = e.relabel(2, 1);
        assert_eq!(e2.final_labels().values().copied().collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(e2.join(1, 2).evaluate().unwrap().graph.edge_count(), 1);
        assert_eq!(CwExpr::v(1, 0).width(), 1);
    }

    #[test]
    fn p4_expression_verifies() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let e = p4_expr();
        assert!(e.verify(&p4));
        assert!(!e.verify(&c4));
        assert_eq!(e.width(), 3);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let e = CwExpr::union(CwExpr::v(1, 0), CwExpr::v(2, 0));
        assert!(matches!(e.evaluate(), Err(Error::DuplicateVertex(_))));
        assert!(CwExpr::v(1, 0).join(1, 1).evaluate().is_err());
    }

    #[test]
    fn substitute_series_of_independent_pairs() {
        let quotient = CwExpr::union(CwExpr::v(1, 0), CwExpr::v(2, 2)).join(1, 2);
        let pair = |a: u32, b: u32| CwExpr::union(CwExpr::v(1, a), CwExpr::v(1, b));
        let parts = BTreeMap::from([(VertexId(0), pair(0, 1)), (VertexId(2), pair(2, 3))]);
        let e = substitute(&quotient, &parts).unwrap();
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(e.verify(&k22));
        assert!(e.width() <= 2);
        let bad = BTreeMap::from([(VertexId(9), pair(4, 5))]);
        assert!(substitute(&quotient, &bad).is_err());
    }

    #[test]
    fn restrict_gives_induced_subgraph() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let keep = vset([0, 2, 3]);
        let r = p4_expr().restrict(&keep).unwrap();
        assert!(r.verify(&p4.induced_subgraph(&keep).unwrap()));
    }

    #[test]
    fn relabel_finals_merges_without_spares() {
        let e = CwExpr::union(CwExpr::union(CwExpr::v(1, 0), CwExpr::v(2, 1)), CwExpr::v(3, 2));
        let f = BTreeMap::from([(1, 2), (2, 3), (3, 3)]);
        let r = e.clone().relabel_finals(&f).unwrap();
        assert_eq!(r.final_labels().values().copied().collect::<Vec<_>>(), vec![2, 3, 3]);
        let swap = BTreeMap::from([(1, 2), (2, 1)]);
        assert!(e.relabel_finals(&swap).is_err());
    }
}
