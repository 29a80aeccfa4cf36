use super::TriPartition;
use crate::cwx::{CwExpr, Label};
use crate::error::{Error, Result};

/// Label `l` of part `i` (both 1-based) in the tripled label space.
fn tri(l: Label, i: usize) -> Label {
    3 * (l - 1) + i as Label
}

/// Rewrites a slice expression so that every vertex of part `i` always
/// carries a label from `{l_i}`: creations pick the part's copy of the label,
/// each relabel becomes three and each join becomes nine.
fn triple(e: &CwExpr, part_of: &impl Fn(crate::VertexId) -> Result<usize>) -> Result<CwExpr> {
    Ok(match e {
        CwExpr::Create { label, vertex } => CwExpr::v(tri(*label, part_of(*vertex)?), *vertex),
        CwExpr::Union { left, right } => CwExpr::union(triple(left, part_of)?, triple(right, part_of)?),
        CwExpr::Relabel { from, to, inner } => {
            (1..=3).rev().fold(triple(inner, part_of)?, |e, i| e.relabel(tri(*from, i), tri(*to, i)))
        }
        CwExpr::Join { i, j, inner } => {
            let mut e = triple(inner, part_of)?;
            for a in (1..=3).rev() {
                for b in (1..=3).rev() {
                    e = e.join(tri(*i, a), tri(*j, b));
                }
            }
            e
        }
    })
}

/// Expression for the sliced graph from expressions of its non-empty slices,
/// given in slice order. Labels are compacted and collapsed onto a single
/// label per slice, tripled per part, and the slices are then added one at a
/// time with six labels: the new slice moves to `2_i`, is joined
/// `1_1-2_2`, `1_2-2_3`, `1_3-2_1`, and moved back to `1_i`.
///
/// Width is at most `max(3k, 6)` where `k` is the largest slice width.
pub fn compose_slices(slice_exprs: &[CwExpr], p: &TriPartition) -> Result<CwExpr> {
    let part_of = |v| p.part_of(v).map(|i| i + 1).ok_or(Error::UnknownVertex(v));
    let mut acc: Option<CwExpr> = None;
    for e in slice_exprs {
        let e = triple(&e.compact_labels().collapse_to(1), &part_of)?;
        acc = Some(match acc {
            None => e,
            Some(prev) => {
                let moved = (1..=3).fold(e, |e, i| e.relabel(tri(1, i), tri(2, i)));
                let joined = CwExpr::union(prev, moved)
                    .join(tri(1, 1), tri(2, 2))
                    .join(tri(1, 2), tri(2, 3))
                    .join(tri(1, 3), tri(2, 1));
                (1..=3).fold(joined, |e, i| e.relabel(tri(2, i), tri(1, i)))
            }
        });
    }
    let out = acc.ok_or_else(|| Error::Precondition("no slices to compose".into()))?;
    out.evaluate()?;
    Ok(out)
}
