//! Shared machinery: a working copy of the graph, the edit log, the stage
//! list, and the two ways of cutting a piece loose.

use super::{Budget, C5Context, Component, ComponentKind, DecompositionReport, Stage};
use crate::curious::TriPartition;
use crate::edit::{EditCounts, EditLog, EditOp};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::patterns::rainbow_violation;

pub(super) fn union<'a>(sets: impl IntoIterator<Item = &'a VertexSet>) -> VertexSet {
    sets.into_iter().flatten().copied().collect()
}

/// Each vertex of `a` is complete or anti-complete to `b`; otherwise returns
/// `[x, y, y']` with `x ~ y` and `x !~ y'`.
pub(super) fn split_witness(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<VertexId>> {
    a.iter().find_map(|&x| {
        let hit = b.iter().find(|&&y| g.adjacent(x, y))?;
        let miss = b.iter().find(|&&y| !g.adjacent(x, y))?;
        Some(vec![x, *hit, *miss])
    })
}

pub(super) fn require_trivial(g: &Graph, step: &str, a: &VertexSet, b: &VertexSet) -> Result<()> {
    match split_witness(g, a, b) {
        Some(w) => Err(Error::claim(step, format!("{} sees {} but not {}", w[0], w[1], w[2]), w)),
        None => Ok(()),
    }
}

pub(super) fn require_independent(g: &Graph, step: &str, s: &VertexSet) -> Result<()> {
    for &x in s {
        if let Some(&y) = g.neighbours_in(x, s).first() {
            return Err(Error::claim(step, format!("edge {x}-{y} inside a set that must be independent"), vec![x, y]));
        }
    }
    Ok(())
}

/// All pairs between `a` and `b` are edges, or none are.
pub(super) fn require_uniform(g: &Graph, step: &str, a: &VertexSet, b: &VertexSet) -> Result<()> {
    let edge = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).find(|&(x, y)| g.adjacent(x, y));
    let gap = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).find(|&(x, y)| !g.adjacent(x, y));
    match (edge, gap) {
        (Some((a1, b1)), Some((a2, b2))) => Err(Error::claim(
            step,
            "sets are neither complete nor anti-complete to each other",
            vec![a1, b1, a2, b2],
        )),
        _ => Ok(()),
    }
}

/// Non-trivial components of the bipartite graph between independent `a` and
/// `b`, each required to be complete bipartite. Returned as `(a-side, b-side)`.
pub(super) fn biclique_components(g: &Graph, step: &str, a: &VertexSet, b: &VertexSet) -> Result<Vec<(VertexSet, VertexSet)>> {
    let h = g.induced_subgraph(&union([a, b]))?;
    let mut out = Vec::new();
    for comp in h.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let sa: VertexSet = comp.intersection(a).copied().collect();
        let sb: VertexSet = comp.intersection(b).copied().collect();
        if let Some((x, y)) = sa.iter().flat_map(|&x| sb.iter().map(move |&y| (x, y))).find(|&(x, y)| !g.adjacent(x, y)) {
            return Err(Error::claim(step, "component is not complete bipartite (induced P4)", vec![x, y]));
        }
        out.push((sa, sb));
    }
    Ok(out)
}

pub(super) struct Run<'g> {
    pub g: &'g Graph,
    pub ctx: C5Context,
    pub work: Graph,
    log: EditLog,
    stages: Vec<Stage>,
    components: Vec<Component>,
    open: Option<(String, EditCounts)>,
}

impl<'g> Run<'g> {
    pub fn new(g: &'g Graph, ctx: C5Context) -> Self {
        Run { g, ctx, work: g.clone(), log: EditLog::new(g), stages: Vec::new(), components: Vec::new(), open: None }
    }

    pub fn stage(&mut self, name: impl Into<String>) {
        self.close();
        self.open = Some((name.into(), self.log.counts));
    }

    fn close(&mut self) {
        if let Some((name, before)) = self.open.take() {
            let now = self.log.counts;
            let counts = EditCounts {
                deletions: now.deletions - before.deletions,
                bipartite_complementations: now.bipartite_complementations - before.bipartite_complementations,
                subgraph_complementations: now.subgraph_complementations - before.subgraph_complementations,
            };
            let note = (counts == EditCounts::default()).then(|| "nothing to do".to_string());
            self.stages.push(Stage { name, counts, note });
        }
    }

    /// Removes all edges between `s` and `t`, which must be complete to each
    /// other in the working graph. No-op if either side is empty.
    pub fn cut(&mut self, step: &str, s: &VertexSet, t: &VertexSet) -> Result<()> {
        if s.is_empty() || t.is_empty() {
            return Ok(());
        }
        if let Some((x, y)) = s.iter().flat_map(|&x| t.iter().map(move |&y| (x, y))).find(|&(x, y)| !self.work.adjacent(x, y)) {
            return Err(Error::claim(step, format!("{x} and {y} should be adjacent before the cut"), vec![x, y]));
        }
        let op = EditOp::BipartiteComplementation { s: s.clone(), t: t.clone() };
        self.work = self.work.apply_edit(&op)?;
        self.log.push(op);
        Ok(())
    }

    pub fn delete(&mut self, v: VertexId) -> Result<()> {
        let op = EditOp::VertexDeletion { vertex: v };
        self.work = self.work.apply_edit(&op)?;
        self.log.push(op);
        Ok(())
    }

    /// Cuts a piece loose with one complementation per part: every vertex
    /// outside the piece must be complete or anti-complete to each part, and
    /// the part is complemented against the outside vertices that see it.
    pub fn detach_parts(&mut self, step: &str, parts: &[&VertexSet]) -> Result<()> {
        let piece = union(parts.iter().copied());
        let outside: VertexSet = self.work.vertex_set().difference(&piece).copied().collect();
        for &x in parts {
            if x.is_empty() {
                continue;
            }
            let seen: VertexSet = outside.iter().copied().filter(|&t| !self.work.neighbours_in(t, x).is_empty()).collect();
            require_trivial(&self.work, step, &seen, x)?;
            self.cut(step, x, &seen)?;
        }
        Ok(())
    }

    /// Cuts a piece made of whole cells loose, one complementation per pair
    /// (piece cell, outside cell) that has edges. Each such pair must be
    /// simple: its edges form a single complete bipartite graph.
    pub fn detach_cells(&mut self, step: &str, cells: &[VertexSet], piece: &[usize]) -> Result<()> {
        for &i in piece {
            for (j, y) in cells.iter().enumerate() {
                if piece.contains(&j) {
                    continue;
                }
                let x = &cells[i];
                let xs: VertexSet = x.iter().copied().filter(|&a| !self.work.neighbours_in(a, y).is_empty()).collect();
                let ys: VertexSet = y.iter().copied().filter(|&b| !self.work.neighbours_in(b, x).is_empty()).collect();
                if let Some((a, b)) = xs.iter().flat_map(|&a| ys.iter().map(move |&b| (a, b))).find(|&(a, b)| !self.work.adjacent(a, b)) {
                    return Err(Error::claim(step, format!("pair of cells {i}, {j} is not simple"), vec![a, b]));
                }
                self.cut(step, &xs, &ys)?;
            }
        }
        let vs = union(piece.iter().map(|&i| &cells[i]));
        self.require_isolated(step, &vs)
    }

    fn require_isolated(&self, step: &str, vs: &VertexSet) -> Result<()> {
        for &x in vs {
            if let Some(&y) = self.work.neighbours(x).difference(vs).next() {
                return Err(Error::claim(step, format!("piece still has the edge {x}-{y} to the rest"), vec![x, y]));
            }
        }
        Ok(())
    }

    fn push_component(&mut self, step: &str, vs: &VertexSet, kind: ComponentKind) -> Result<()> {
        self.require_isolated(step, vs)?;
        let graph = self.work.induced_subgraph(vs)?;
        self.components.push(Component { graph, kind });
        Ok(())
    }

    /// Records a detached piece as curious with the given parts.
    pub fn curious(&mut self, step: &str, parts: [VertexSet; 3]) -> Result<()> {
        let p = TriPartition::from_parts(parts);
        let vs = p.vertices();
        if vs.is_empty() {
            return Ok(());
        }
        let h = self.work.induced_subgraph(&vs)?;
        p.validate(&h).map_err(|e| Error::claim(step, e.to_string(), vec![]))?;
        if let Some(r) = rainbow_violation(&h, &p)? {
            return Err(Error::claim(step, format!("piece has a rainbow {:?}", r.kind), r.triple.to_vec()));
        }
        self.push_component(step, &vs, ComponentKind::Curious { partition: p })
    }

    /// Records a detached piece as bipartite, with its two-colouring as the
    /// partition.
    pub fn bipartite(&mut self, step: &str, vs: &VertexSet) -> Result<()> {
        if vs.is_empty() {
            return Ok(());
        }
        let h = self.work.induced_subgraph(vs)?;
        let Some((a, b)) = h.bipartition() else {
            return Err(Error::claim(step, "piece is not bipartite", vs.iter().copied().collect()));
        };
        self.curious(step, [a, b, VertexSet::new()])
    }

    pub fn three_uniform(&mut self, step: &str, vs: &VertexSet, recognition: crate::uniform::UniformRecognition) -> Result<()> {
        self.push_component(step, vs, ComponentKind::ThreeUniform { recognition })
    }

    pub fn finish(mut self, class: &str, budget: Budget) -> Result<DecompositionReport> {
        self.close();
        let covered = union(self.components.iter().map(|c| c.graph.vertex_set()).collect::<Vec<_>>().iter());
        if covered != self.work.vertex_set() {
            let left: Vec<VertexId> = self.work.vertex_set().difference(&covered).copied().collect();
            return Err(Error::claim("final pieces", "vertices left outside every piece", left));
        }
        let r = DecompositionReport {
            class: class.to_string(),
            context: self.ctx,
            edit_log: self.log,
            stages: self.stages,
            components: self.components,
            budget,
        };
        let problems = super::report_problems(self.g, &r);
        if !problems.is_empty() {
            return Err(Error::claim("budget and certificates", problems.join("; "), vec![]));
        }
        Ok(r)
    }
}
