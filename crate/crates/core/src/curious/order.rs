//! Monotone orderings of `V1` and slicing of curious graphs of type 0 and 1.

use super::{SliceDecomposition, TriPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::patterns::{find_2p2, rainbow_violation};

/// Orders `V1` so that neighbourhoods in `V2` shrink and neighbourhoods in
/// `V3` grow along the order. Ties in `V2` are broken by `V3`, then by id.
///
/// Both `G[V1 ∪ V2]` and `G[V1 ∪ V3]` must be 2P2-free and the graph curious;
/// otherwise the postcondition check fails and the error carries a 2P2, a
/// rainbow triple or the offending pair.
pub fn monotone_order(g: &Graph, p: &TriPartition) -> Result<Vec<VertexId>> {
    p.validate(g)?;
    let key = |x: VertexId| (g.neighbours_in(x, &p.v2), g.neighbours_in(x, &p.v3));
    let mut order: Vec<(VertexId, VertexSet, VertexSet)> = p.v1.iter().map(|&x| {
        let (a, b) = key(x);
        (x, a, b)
    }).collect();
    // Within a chain, reverse inclusion is decreasing size; the check below
    // catches inputs that are not chains.
    order.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.2.len().cmp(&b.2.len())).then(a.0.cmp(&b.0)));
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            let (xi, n2i, n3i) = &order[i];
            let (xj, n2j, n3j) = &order[j];
            if !n2j.is_subset(n2i) || !n3i.is_subset(n3j) {
                return Err(order_failure(g, p, *xi, *xj));
            }
        }
    }
    Ok(order.into_iter().map(|(x, ..)| x).collect())
}

fn order_failure(g: &Graph, p: &TriPartition, a: VertexId, b: VertexId) -> Error {
    for (other, name) in [(&p.v2, "V2"), (&p.v3, "V3")] {
        if let Some(w) = find_2p2(g, &p.v1, other) {
            return Error::claim("monotone order", format!("G[V1 ∪ {name}] contains a 2P2"), w.to_vec());
        }
    }
    if let Ok(Some(r)) = rainbow_violation(g, p) {
        return Error::claim("monotone order", format!("rainbow {:?}", r.kind), r.triple.to_vec());
    }
    Error::claim("monotone order", "neighbourhoods are not nested", vec![a, b])
}

/// First rotation (`0, 1, 2`) under which `G[V1 ∪ V2]` and `G[V1 ∪ V3]` are
/// both 2P2-free.
pub(super) fn type01_rotation(g: &Graph, p: &TriPartition) -> Option<usize> {
    (0..3).find(|&r| {
        let q = p.rotate(r);
        find_2p2(g, &q.v1, &q.v2).is_none() && find_2p2(g, &q.v1, &q.v3).is_none()
    })
}

/// Slices a curious graph of type at most 1 into bipartite slices.
///
/// With `x_1, ..., x_l` the monotone order of `V1`: `V1^0 = ∅`,
/// `V1^i = {x_i}`, `V2^i` holds the vertices adjacent to exactly
/// `x_1, ..., x_i` and `V3^i` those non-adjacent to exactly `x_1, ..., x_i`.
/// The rotation making `V1` the shared part is chosen here; the slices are
/// returned in terms of the original parts.
pub fn slice_type01(g: &Graph, p: &TriPartition) -> Result<SliceDecomposition> {
    p.validate(g)?;
    let r = type01_rotation(g, p)
        .ok_or_else(|| Error::Precondition("no part is 2P2-free towards both other parts".into()))?;
    let q = p.rotate(r);
    let order = monotone_order(g, &q)?;
    let l = order.len();
    let mut slices: Vec<[VertexSet; 3]> = vec![Default::default(); l + 1];
    for (i, &x) in order.iter().enumerate() {
        slices[i + 1][0].insert(x);
    }
    // A vertex's neighbourhood in V1 must be a prefix (for V2) or a suffix
    // (for V3) of the order; its length picks the slice.
    for (part, prefix) in [(1, true), (2, false)] {
        for &y in q.part(part) {
            let adj: Vec<bool> = order.iter().map(|&x| g.adjacent(x, y)).collect();
            let cut = adj.iter().position(|&a| a != prefix).unwrap_or(l);
            if adj[cut..].iter().any(|&a| a == prefix) {
                let shape = if prefix { "prefix" } else { "suffix" };
                return Err(Error::claim(
                    "type-0/1 slicing",
                    format!("neighbourhood of {y} in V1 is not a {shape} of the monotone order"),
                    vec![y],
                ));
            }
            slices[cut][part].insert(y);
        }
    }
    let d = SliceDecomposition::new(slices.into_iter().map(TriPartition::from_parts).collect());
    for (j, s) in d.slices.iter().enumerate() {
        if !g.is_anticomplete(&s.v1, &s.v3) {
            return Err(Error::claim("type-0/1 slicing", format!("slice {j} is not bipartite"), s.vertices().into_iter().collect()));
        }
    }
    let d = d.rotated((3 - r) % 3);
    d.validate(g, p)?;
    Ok(d)
}
