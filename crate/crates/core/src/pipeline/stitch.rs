//! Undoing a decomposition in expression space.
//!
//! Every complementation in a decomposition log removes a complete bipartite
//! `S x T`, so the input is the union of the final pieces, the removed
//! bicliques, and the edges at deleted vertices. Vertices are grouped by a
//! signature (membership in every `S_j`, `T_j`, and adjacency to every deleted
//! vertex); the piece expressions are refined so that each label also
//! remembers the signature, then collapsed to one label per signature class.
//! A join per pair of classes restores the bicliques, and deleted vertices come
//! back one at a time with a spare label.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cwx::{CwExpr, Label};
use crate::edit::{EditLog, EditOp};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StitchStats {
    /// Number of signature classes, one label each in the final expression.
    pub classes: usize,
    /// Largest piece width before refinement.
    pub piece_width: usize,
    /// Joins added to restore removed bicliques.
    pub class_joins: usize,
    pub reattached: usize,
}

/// Expression for `g` from expressions of the pieces left after `log`.
/// The pieces must partition the surviving vertices and their disjoint union
/// must equal the final graph of the log.
pub fn stitch(g: &Graph, log: &EditLog, pieces: &[CwExpr]) -> Result<(CwExpr, StitchStats)> {
    let mut deleted = Vec::new();
    let mut cuts = Vec::new();
    for op in &log.ops {
        match op {
            EditOp::VertexDeletion { vertex } => deleted.push(*vertex),
            EditOp::BipartiteComplementation { s, t } => {
                if !g.is_complete(s, t) {
                    return Err(Error::Expr("stitching needs complementations that only remove edges".into()));
                }
                cuts.push((s, t));
            }
            EditOp::SubgraphComplementation { .. } => {
                return Err(Error::Expr("stitching does not handle subgraph complementations".into()));
            }
        }
    }
    let gone: VertexSet = deleted.iter().copied().collect();
    let kept: VertexSet = g.vertex_set().difference(&gone).copied().collect();
    let mut covered = VertexSet::new();
    for p in pieces {
        let vs = p.vertices();
        if !covered.is_disjoint(&vs) {
            return Err(Error::Expr("pieces overlap".into()));
        }
        covered.extend(vs);
    }
    if covered != kept {
        return Err(Error::Expr("pieces do not cover the surviving vertices".into()));
    }

    let signature = |v: VertexId| -> Vec<bool> {
        let live = kept.contains(&v);
        let mut sig: Vec<bool> = cuts.iter().flat_map(|(s, t)| [live && s.contains(&v), live && t.contains(&v)]).collect();
        sig.extend(deleted.iter().map(|&d| g.adjacent(v, d)));
        sig
    };
    let sigs: BTreeMap<VertexId, Vec<bool>> = g.vertices().iter().map(|&v| (v, signature(v))).collect();
    let distinct: BTreeSet<&Vec<bool>> = sigs.values().collect();
    let class_label: BTreeMap<&Vec<bool>, Label> = distinct.into_iter().zip(1..).collect();
    let class_of: BTreeMap<VertexId, Label> = sigs.iter().map(|(v, s)| (*v, class_label[s])).collect();
    let classes = class_label.len() as Label;
    let spare = classes + 1;
    let base = classes + 2;

    let piece_width = pieces.iter().map(CwExpr::width).max().unwrap_or(0);
    let mut refined = Vec::new();
    for p in pieces {
        let p = p.compact_labels();
        let present: Vec<Label> = p.vertices().iter().map(|v| class_of[v]).collect::<BTreeSet<_>>().into_iter().collect();
        let slot: BTreeMap<Label, Label> = present.iter().enumerate().map(|(i, &c)| (c, i as Label)).collect();
        let fan = present.len() as Label;
        let lab = |l: Label, c: Label| base + (l - 1) * fan + slot[&c];
        let e = refine(&p, &present, &class_of, &lab);
        let finals: BTreeMap<Label, Label> = e
            .final_labels()
            .into_iter()
            .map(|(v, l)| (l, class_of[&v]))
            .collect();
        refined.push(e.relabel_finals(&finals)?);
    }

    let mut expr = CwExpr::union_all(refined);
    let live_classes: BTreeSet<Label> = kept.iter().map(|v| class_of[v]).collect();
    let mut pairs = BTreeSet::new();
    for (j, _) in cuts.iter().enumerate() {
        let sides = |bit: usize| -> Vec<Label> {
            live_classes.iter().copied().filter(|&c| sigs.values().any(|s| class_label[s] == c && s[2 * j + bit])).collect()
        };
        for a in sides(0) {
            for b in sides(1) {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    if let Some(e) = expr.take() {
        expr = Some(pairs.iter().fold(e, |e, &(a, b)| e.join(a, b)));
    }
    let mut present: BTreeSet<Label> = live_classes;
    for (k, &d) in deleted.iter().enumerate() {
        let bit = 2 * cuts.len() + k;
        let leaf = CwExpr::v(spare, d);
        let mut e = match expr.take() {
            Some(e) => CwExpr::union(e, leaf),
            None => leaf,
        };
        for &c in &present {
            let sig = sigs.values().find(|s| class_label[s] == c).expect("class has a member");
            if sig[bit] {
                e = e.join(spare, c);
            }
        }
        e = e.relabel(spare, class_of[&d]);
        present.insert(class_of[&d]);
        expr = Some(e);
    }
    let expr = expr.ok_or_else(|| Error::Expr("nothing to stitch".into()))?;
    if !expr.verify(g) {
        return Err(Error::claim("stitching", "stitched expression does not evaluate to the input", vec![]));
    }
    let stats = StitchStats { classes: classes as usize, piece_width, class_joins: pairs.len(), reattached: deleted.len() };
    Ok((expr, stats))
}

/// Splits every label `l` into one label per class present in the piece.
fn refine(e: &CwExpr, present: &[Label], class_of: &BTreeMap<VertexId, Label>, lab: &impl Fn(Label, Label) -> Label) -> CwExpr {
    match e {
        CwExpr::Create { label, vertex } => CwExpr::v(lab(*label, class_of[vertex]), *vertex),
        CwExpr::Union { left, right } => {
            CwExpr::union(refine(left, present, class_of, lab), refine(right, present, class_of, lab))
        }
        CwExpr::Join { i, j, inner } => {
            let mut out = refine(inner, present, class_of, lab);
            for &a in present {
                for &b in present {
                    out = out.join(lab(*i, a), lab(*j, b));
                }
            }
            out
        }
        CwExpr::Relabel { from, to, inner } => present
            .iter()
            .fold(refine(inner, present, class_of, lab), |out, &c| out.relabel(lab(*from, c), lab(*to, c))),
    }
}
