//! Curious graphs: 3-partite graphs without rainbow K3 or 3P1.
//!
//! Type 0/1 graphs are cut into bipartite slices along a monotone order of one
//! part; type 2/3 graphs are cut along an ordered chain of 2P2 blocks into
//! slices of smaller type. Slices are then glued back with six labels.

mod blocks;
mod compose;
mod order;
mod partition;
mod slices;

use std::collections::BTreeMap;

pub use blocks::{block_structure, slice_type23, Block, BlockStructure, Frame};
pub use compose::compose_slices;
pub use order::{monotone_order, slice_type01};
pub use partition::TriPartition;
pub use slices::{assemble, SliceDecomposition};

use crate::cwx::CwExpr;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patterns::{find_pattern, pair_has_2p2, rainbow_violation, RainbowKind};
use crate::wqo::{higman_leq, labelled_embeds, LabelledGraphW, Poset};

/// Number of the three cross-part graphs that contain an induced 2P2.
/// Errors with the rainbow triple if the graph is not curious.
pub fn curious_type(g: &Graph, p: &TriPartition) -> Result<usize> {
    if let Some(r) = rainbow_violation(g, p)? {
        let kind = match r.kind {
            RainbowKind::K3 => "K3",
            RainbowKind::ThreeP1 => "3P1",
        };
        return Err(Error::claim("curious", format!("rainbow {kind}"), r.triple.to_vec()));
    }
    Ok([(0, 1), (0, 2), (1, 2)].into_iter().filter(|&(a, b)| pair_has_2p2(g, p.part(a), p.part(b))).count())
}

/// Width guaranteed by [`curious_cw`] when every bipartite leaf has width at
/// most `b`: three rounds of `k -> max(3k, 6)`.
pub fn curious_width_bound(b: usize) -> usize {
    (0..3).fold(b, |k, _| (3 * k).max(6))
}

/// Expression for a curious graph. Bipartite pieces go to `bip_leaf`; the rest
/// is sliced (type 0/1 into bipartite slices, type 2/3 into slices of smaller
/// type, recursively) and recomposed with [`compose_slices`].
pub fn curious_cw(g: &Graph, p: &TriPartition, bip_leaf: &mut dyn FnMut(&Graph) -> Result<CwExpr>) -> Result<CwExpr> {
    let e = build(g, p, bip_leaf, 0)?;
    if !e.verify(g) {
        return Err(Error::claim("curious expression", "result does not evaluate to the input", vec![]));
    }
    Ok(e)
}

fn build(g: &Graph, p: &TriPartition, bip_leaf: &mut dyn FnMut(&Graph) -> Result<CwExpr>, depth: usize) -> Result<CwExpr> {
    if g.is_empty() {
        return Err(Error::Precondition("empty graph".into()));
    }
    if p.parts().iter().any(|s| s.is_empty()) {
        p.validate(g)?;
        return bip_leaf(g);
    }
    let t = curious_type(g, p)?;
    if depth > 3 {
        return Err(Error::claim("curious recursion", format!("type {t} at depth {depth}"), vec![]));
    }
    let d = if t <= 1 { slice_type01(g, p)? } else { slice_type23(g, p)? };
    let mut exprs = Vec::new();
    for j in d.nonempty() {
        let s = &d.slices[j];
        let gs = g.induced_subgraph(&s.vertices())?;
        exprs.push(if t <= 1 { bip_leaf(&gs)? } else { build(&gs, s, bip_leaf, depth + 1)? });
    }
    compose_slices(&exprs, p)
}

/// The slices of `d` as graphs labelled by part (0, 1, 2).
fn labelled_slices(g: &Graph, d: &SliceDecomposition) -> Result<Vec<LabelledGraphW>> {
    d.slices
        .iter()
        .map(|s| {
            let gs = g.induced_subgraph(&s.vertices())?;
            let labels: BTreeMap<_, _> = s.vertices().into_iter().map(|v| (v, s.part_of(v).expect("in slice"))).collect();
            LabelledGraphW::new(gs, labels)
        })
        .collect()
}

/// True iff the slice sequence of `h` embeds into that of `g` as a Higman
/// subsequence, slices compared as graphs labelled by part over a 3-element
/// antichain. A positive answer is cross-checked by finding `h` as an induced
/// subgraph of `g`.
pub fn slice_sequence(g: &Graph, dg: &SliceDecomposition, h: &Graph, dh: &SliceDecomposition) -> Result<bool> {
    let parts = Poset::antichain(3);
    let (sg, sh) = (labelled_slices(g, dg)?, labelled_slices(h, dh)?);
    let mut failed = None;
    let ok = higman_leq(&sh, &sg, |a, b| match labelled_embeds(a, b, &parts) {
        Ok(x) => x,
        Err(e) => {
            failed.get_or_insert(e);
            false
        }
    });
    if let Some(e) = failed {
        return Err(e);
    }
    if ok {
        let hp = crate::patterns::Pattern { name: "H".into(), graph: h.clone() };
        if find_pattern(g, &hp).is_none() {
            return Err(Error::claim("slice sequence", "slices embed but the graph does not", vec![]));
        }
    }
    Ok(ok)
}
