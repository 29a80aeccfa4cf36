//! Decompositions of triangle-free graphs around an induced C5.
//!
//! The vertices off the cycle are split by their cycle neighbourhood into `U`
//! (none), `W_i` (only `v_i`) and `V_i` (`v_{i-1}` and `v_{i+1}`). Both
//! decompositions then cut the graph into curious (and, for P2+P4, one
//! 3-uniform) pieces with vertex deletions and bipartite complementations,
//! logging every edit and checking the structural facts they rely on.

mod engine;
mod p1p5;
mod p2p4;

use serde::{Deserialize, Serialize};

pub use p1p5::decompose_p1p5;
pub use p2p4::decompose_p2p4;

use crate::curious::TriPartition;
use crate::edit::{graph_hash, EditCounts, EditLog};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::patterns::{find_induced_cycle, rainbow_violation, Witness};
use crate::uniform::UniformRecognition;

/// `i mod 5` for signed offsets.
pub(crate) fn m5(i: isize) -> usize {
    i.rem_euclid(5) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C5Context {
    /// `v_1, ..., v_5` in cycle order (stored 0-based).
    pub cycle: [VertexId; 5],
    pub u: VertexSet,
    pub w: [VertexSet; 5],
    pub v: [VertexSet; 5],
}

impl C5Context {
    pub fn cycle_set(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }
}

/// Splits `V(G)` minus the cycle by cycle neighbourhood. A vertex with two
/// consecutive cycle neighbours closes a triangle, which is returned as the
/// witness.
pub fn partition_around_c5(g: &Graph, cycle: [VertexId; 5]) -> Result<C5Context> {
    for i in 0..5 {
        for j in i + 1..5 {
            let consecutive = j == i + 1 || (i == 0 && j == 4);
            if g.adjacent(cycle[i], cycle[j]) != consecutive {
                return Err(Error::Precondition(format!("{:?} does not induce a C5 in this order", cycle)));
            }
        }
    }
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let mut ctx = C5Context { cycle, u: VertexSet::new(), w: Default::default(), v: Default::default() };
    for &x in g.vertices() {
        if on_cycle.contains(&x) {
            continue;
        }
        let hits: Vec<usize> = (0..5).filter(|&i| g.adjacent(x, cycle[i])).collect();
        if let Some(&i) = hits.iter().find(|&&i| hits.contains(&((i + 1) % 5))) {
            return Err(Error::claim(
                "cycle neighbourhoods",
                format!("{x} sees two consecutive cycle vertices"),
                vec![x, cycle[i], cycle[(i + 1) % 5]],
            ));
        }
        match hits.as_slice() {
            [] => {
                ctx.u.insert(x);
            }
            [i] => {
                ctx.w[*i].insert(x);
            }
            // Two non-consecutive neighbours v_a, v_b flank exactly one cycle vertex.
            [a, b] => {
                let mid = if b - a == 2 { a + 1 } else { m5(*a as isize - 1) };
                ctx.v[mid].insert(x);
            }
            _ => unreachable!("three cycle neighbours always include a consecutive pair"),
        }
    }
    Ok(ctx)
}

/// The ten ways of reading an induced C5 as `v_1, ..., v_5`.
pub(crate) fn orientations(c: [VertexId; 5]) -> Vec<[VertexId; 5]> {
    let mut out = Vec::with_capacity(10);
    for reflect in [false, true] {
        for r in 0..5 {
            out.push(std::array::from_fn(|i| {
                let k = if reflect { r as isize - i as isize } else { (r + i) as isize };
                c[m5(k)]
            }));
        }
    }
    out
}

/// First induced C5 of `g`, in cycle order.
pub fn find_c5(g: &Graph) -> Option<[VertexId; 5]> {
    find_induced_cycle(g, 5).map(|w: Witness| {
        let hv = w.host_vertices();
        std::array::from_fn(|i| hv[i])
    })
}

/// Every induced C5 once, smallest vertex first and its smaller neighbour on
/// the cycle second.
pub fn all_c5(g: &Graph) -> Vec<[VertexId; 5]> {
    let mut out = Vec::new();
    let vs = g.vertices();
    for &a in vs {
        let later = |x: &VertexId| *x > a;
        for &b in g.neighbours(a).iter().filter(|x| later(x)) {
            for &c in g.neighbours(b).iter().filter(|x| later(x) && !g.adjacent(a, **x)) {
                for &d in g.neighbours(c).iter().filter(|x| later(x) && !g.adjacent(a, **x) && !g.adjacent(b, **x)) {
                    for &e in g.neighbours(d).iter().filter(|x| **x > b && g.adjacent(a, **x)) {
                        if !g.adjacent(b, e) && !g.adjacent(c, e) {
                            out.push([a, b, c, d, e]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Runs `f` on every orientation of every induced C5 until one succeeds. Any
/// error other than a failed structural check ends the search; if every
/// attempt fails a check, the first failure is returned.
pub(crate) fn try_cycles(
    g: &Graph,
    f: impl Fn(&Graph, [VertexId; 5]) -> Result<DecompositionReport>,
) -> Result<DecompositionReport> {
    let cycles = all_c5(g);
    if cycles.is_empty() {
        return Err(Error::Precondition("graph has no induced C5".into()));
    }
    let mut first_err = None;
    for c in cycles {
        for o in orientations(c) {
            match f(g, o) {
                Ok(r) => return Ok(r),
                Err(e @ Error::Claim { .. }) => {
                    first_err.get_or_insert(e);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Err(first_err.expect("at least one cycle was tried"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    /// Bipartite pieces are curious with an empty part.
    Curious { partition: TriPartition },
    ThreeUniform { recognition: UniformRecognition },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub graph: Graph,
    #[serde(flatten)]
    pub kind: ComponentKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub deletions: usize,
    pub bipartite_complementations: usize,
    pub curious: usize,
    pub three_uniform: usize,
}

impl Budget {
    pub const P1P5: Budget = Budget { deletions: 5, bipartite_complementations: 31, curious: 11, three_uniform: 0 };
    pub const P2P4: Budget = Budget { deletions: 2570, bipartite_complementations: 459, curious: 19, three_uniform: 1 };
}

/// One step of a decomposition and the edits it made. Steps with nothing to
/// do are kept with zero counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub counts: EditCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub class: String,
    pub context: C5Context,
    pub edit_log: EditLog,
    pub stages: Vec<Stage>,
    pub components: Vec<Component>,
    pub budget: Budget,
}

impl DecompositionReport {
    pub fn curious_count(&self) -> usize {
        self.components.iter().filter(|c| matches!(c.kind, ComponentKind::Curious { .. })).count()
    }

    pub fn three_uniform_count(&self) -> usize {
        self.components.len() - self.curious_count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Everything wrong with `r` as a decomposition of `g`; empty iff it checks
/// out. Replays the log, compares the result with the disjoint union of the
/// components, and checks budgets and per-component certificates.
pub fn report_problems(g: &Graph, r: &DecompositionReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.edit_log.input_graph_hash != graph_hash(g) {
        out.push("edit log was recorded for a different graph".into());
    }
    let tally = r.edit_log.tally();
    if tally != r.edit_log.counts {
        out.push(format!("log counters {:?} disagree with its ops {:?}", r.edit_log.counts, tally));
    }
    let staged = r.stages.iter().fold((0, 0), |(d, b), s| (d + s.counts.deletions, b + s.counts.bipartite_complementations));
    if staged != (tally.deletions, tally.bipartite_complementations) {
        out.push("stage counts do not add up to the log".into());
    }
    let b = &r.budget;
    if tally.deletions > b.deletions {
        out.push(format!("{} deletions exceed the budget of {}", tally.deletions, b.deletions));
    }
    if tally.bipartite_complementations > b.bipartite_complementations {
        out.push(format!(
            "{} bipartite complementations exceed the budget of {}",
            tally.bipartite_complementations, b.bipartite_complementations
        ));
    }
    if tally.subgraph_complementations > 0 {
        out.push("subgraph complementations are not part of these decompositions".into());
    }
    if r.curious_count() > b.curious || r.three_uniform_count() > b.three_uniform {
        out.push(format!(
            "{} curious and {} 3-uniform components exceed the budget of {} and {}",
            r.curious_count(),
            r.three_uniform_count(),
            b.curious,
            b.three_uniform
        ));
    }
    let h = match r.edit_log.replay(g) {
        Ok(h) => h,
        Err(e) => {
            out.push(format!("replay failed: {e}"));
            return out;
        }
    };
    let mut seen = VertexSet::new();
    let mut edges = 0;
    for (k, c) in r.components.iter().enumerate() {
        let vs = c.graph.vertex_set();
        if vs.is_empty() {
            out.push(format!("component {k} is empty"));
        }
        if let Some(v) = vs.iter().find(|v| seen.contains(v)) {
            out.push(format!("vertex {v} lies in two components"));
        }
        seen.extend(vs.iter().copied());
        edges += c.graph.edge_count();
        match h.induced_subgraph(&vs) {
            Ok(sub) if sub == c.graph => {}
            _ => out.push(format!("component {k} is not the replayed graph on its vertices")),
        }
        match &c.kind {
            ComponentKind::Curious { partition } => match rainbow_violation(&c.graph, partition) {
                Ok(None) => {}
                Ok(Some(rb)) => out.push(format!("component {k} has a rainbow {:?} on {:?}", rb.kind, rb.triple)),
                Err(e) => out.push(format!("component {k}: {e}")),
            },
            ComponentKind::ThreeUniform { recognition } => {
                if !recognition.certifies(&c.graph) {
                    out.push(format!("component {k} is not certified 3-uniform"));
                }
            }
        }
    }
    if seen != h.vertex_set() {
        out.push("components do not cover the replayed graph".into());
    }
    if edges != h.edge_count() {
        out.push("replayed graph has edges between components".into());
    }
    out
}

pub fn check_report(g: &Graph, r: &DecompositionReport) -> bool {
    report_problems(g, r).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::EditOp;
    use crate::graph::vset;
    use crate::patterns::Pattern;

    fn c5() -> Graph {
        Pattern::cycle(5).graph
    }

    fn ids(a: [u32; 5]) -> [VertexId; 5] {
        a.map(VertexId)
    }

    #[test]
    fn partition_examples() {
        let ctx = partition_around_c5(&c5(), ids([0, 1, 2, 3, 4])).unwrap();
        assert!(ctx.u.is_empty() && ctx.w.iter().all(|s| s.is_empty()) && ctx.v.iter().all(|s| s.is_empty()));
        let pendant = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        let ctx = partition_around_c5(&pendant, ids([0, 1, 2, 3, 4])).unwrap();
        assert_eq!(ctx.w[0], vset([5]));
        // Adjacent to the first and third cycle vertices: the second one's V set.
        let hat = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 2)]).unwrap();
        let ctx = partition_around_c5(&hat, ids([0, 1, 2, 3, 4])).unwrap();
        assert_eq!(ctx.v[1], vset([5]));
        let wrap = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 4), (5, 1)]).unwrap();
        assert_eq!(partition_around_c5(&wrap, ids([0, 1, 2, 3, 4])).unwrap().v[0], vset([5]));
    }

    #[test]
    fn triangle_is_reported() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (5, 2)]).unwrap();
        match partition_around_c5(&g, ids([0, 1, 2, 3, 4])) {
            Err(Error::Claim { witness, .. }) => assert_eq!(witness, vec![VertexId(5), VertexId(1), VertexId(2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cycles_are_listed_once() {
        assert_eq!(all_c5(&c5()), vec![ids([0, 1, 2, 3, 4])]);
        // Two C5s sharing the path 0-1-2-3.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (3, 5), (5, 0)]).unwrap();
        assert_eq!(all_c5(&g).len(), 2);
        assert!(all_c5(&Pattern::cycle(6).graph).is_empty());
    }

    #[test]
    fn orientations_are_distinct_cycles() {
        let all = orientations(ids([0, 1, 2, 3, 4]));
        assert_eq!(all.iter().collect::<std::collections::BTreeSet<_>>().len(), 10);
        for o in all {
            partition_around_c5(&c5(), o).unwrap();
        }
    }

    #[test]
    fn tampered_reports_fail() {
        // C5 plus a vertex 5 on v1, v3 with three private leaves 6, 7, 8.
        let g = Graph::from_edges(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 2), (6, 5), (7, 5), (8, 5)])
            .unwrap();
        let r = decompose_p1p5(&g).unwrap();
        assert!(check_report(&g, &r), "{:?}", report_problems(&g, &r));
        let mut extra = r.clone();
        let last = *extra.components.last().unwrap().graph.vertices().last().unwrap();
        extra.edit_log.push(EditOp::VertexDeletion { vertex: last });
        assert!(!check_report(&g, &extra));
        let mut mislabelled = r.clone();
        let leaves = mislabelled.components.iter_mut().find(|c| c.graph.vertex_set() == vset([6, 7, 8])).unwrap();
        leaves.kind = ComponentKind::Curious { partition: TriPartition::new(vset([6]), vset([7]), vset([8])) };
        let problems = report_problems(&g, &mislabelled);
        assert!(problems.iter().any(|p| p.contains("rainbow")), "{problems:?}");
    }
}
