//! Slicing of curious graphs of type 2 and 3 through blocks of 2P2s.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{curious_type, SliceDecomposition, TriPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::patterns::find_2p2;

/// How the working partition was obtained from the caller's: first rotated by
/// `rotation`, then (if `swapped`) with its first two parts exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub rotation: usize,
    pub swapped: bool,
}

impl Frame {
    pub fn apply(&self, p: &TriPartition) -> TriPartition {
        let q = p.rotate(self.rotation);
        if self.swapped {
            q.swap12()
        } else {
            q
        }
    }

    /// Maps slices found in the working frame back to the caller's parts.
    pub fn undo(&self, d: &SliceDecomposition) -> SliceDecomposition {
        let d = if self.swapped { d.mirrored() } else { d.clone() };
        d.rotated((3 - self.rotation) % 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub b1: VertexSet,
    pub b2: VertexSet,
}

/// Blocks `B^1 <_B ... <_B B^p` inside `V1 ∪ V2` (in the working frame), the
/// residues left after the update procedure, and the threshold classes of the
/// residues and of `V3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub frame: Frame,
    /// The 2P2s of the maximal packing, as `[x1, y1, x2, y2]`.
    pub packing: Vec<[VertexId; 4]>,
    pub blocks: Vec<Block>,
    /// Vertices moved from a residue into a block, in order, with the block index.
    pub updates: Vec<(VertexId, usize)>,
    pub r1: VertexSet,
    pub r2: VertexSet,
    /// `y1[i]`: residue vertices of `V1` complete to `B^j_2` exactly for `j > i`.
    pub y1: Vec<VertexSet>,
    /// `y2[i]`: residue vertices of `V2` complete to `B^j_1` exactly for `j <= i`.
    pub y2: Vec<VertexSet>,
    /// `v3[i]`: vertices of `V3` complete to `B^j_2` exactly for `j <= i`, and
    /// to `B^j_1` exactly for `j > i`.
    pub v3: Vec<VertexSet>,
}

impl BlockStructure {
    /// Slices `G^0, G[B^1], G^1, ..., G[B^p], G^p` in the working frame, where
    /// `G^i` is induced by `Y^i_1 ∪ Y^i_2 ∪ V3^i`.
    pub fn slices_in_frame(&self) -> SliceDecomposition {
        let mut out = Vec::with_capacity(2 * self.blocks.len() + 1);
        for i in 0..=self.blocks.len() {
            if i > 0 {
                let b = &self.blocks[i - 1];
                out.push(TriPartition::new(b.b1.clone(), b.b2.clone(), VertexSet::new()));
            }
            out.push(TriPartition::new(self.y1[i].clone(), self.y2[i].clone(), self.v3[i].clone()));
        }
        SliceDecomposition::new(out)
    }

    pub fn slices(&self) -> SliceDecomposition {
        self.frame.undo(&self.slices_in_frame())
    }
}

/// Attempt order for the working frame: rotations first, then the swapped
/// versions. The first frame whose `G[V1 ∪ V2]` has a 2P2 is used.
fn frame_for(g: &Graph, p: &TriPartition) -> Option<Frame> {
    [false, true]
        .into_iter()
        .flat_map(|swapped| (0..3).map(move |rotation| Frame { rotation, swapped }))
        .find(|f| {
            let q = f.apply(p);
            find_2p2(g, &q.v1, &q.v2).is_some()
        })
}

fn claim(step: &str, detail: impl Into<String>, witness: Vec<VertexId>) -> Error {
    Error::claim(step, detail, witness)
}

/// Which side of a 2P2 a vertex of `V3` sees: `1` for the `V1` pair, `2` for
/// the `V2` pair. Errors if it sees anything else.
fn side(g: &Graph, z: VertexId, h: &[VertexId; 4]) -> Result<u8> {
    let [x1, y1, x2, y2] = *h;
    let a = [g.adjacent(z, x1), g.adjacent(z, y1), g.adjacent(z, x2), g.adjacent(z, y2)];
    match a {
        [true, false, true, false] => Ok(1),
        [false, true, false, true] => Ok(2),
        _ => Err(claim(
            "two-neighbour rule",
            format!("{z} does not see exactly one side of the 2P2"),
            vec![z, x1, y1, x2, y2],
        )),
    }
}

/// `B^i <_B B^j`: `B^i_1` complete to `B^j_2` and `B^i_2` anti-complete to `B^j_1`.
fn before(g: &Graph, bi: &Block, bj: &Block) -> bool {
    g.is_complete(&bi.b1, &bj.b2) && g.is_anticomplete(&bi.b2, &bj.b1)
}

/// Both halves of the chain property for the current blocks and `V3`.
fn check_chain(g: &Graph, blocks: &[Block], v3: &VertexSet) -> Result<Vec<VertexSet>> {
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if !before(g, &blocks[i], &blocks[j]) {
                let w = blocks[i].b1.iter().chain(&blocks[j].b2).copied().collect();
                return Err(claim("chain property", format!("blocks {} and {} are out of order", i + 1, j + 1), w));
            }
        }
    }
    let mut classes = vec![VertexSet::new(); blocks.len() + 1];
    for &z in v3 {
        let one = VertexSet::from([z]);
        let sees2 = |b: &Block| g.is_complete(&one, &b.b2) && g.is_anticomplete(&one, &b.b1);
        let sees1 = |b: &Block| g.is_complete(&one, &b.b1) && g.is_anticomplete(&one, &b.b2);
        let t = blocks.iter().take_while(|b| sees2(b)).count();
        if !blocks[t..].iter().all(sees1) {
            return Err(claim("chain property", format!("{z} has no threshold on the blocks"), vec![z]));
        }
        classes[t].insert(z);
    }
    Ok(classes)
}

type Thresholds = (Vec<VertexSet>, Vec<VertexSet>);

/// `Y^i_1` and `Y^i_2`: residue vertices grouped by where their adjacency to
/// the blocks switches.
fn thresholds(g: &Graph, blocks: &[Block], r1: &VertexSet, r2: &VertexSet) -> Result<Thresholds> {
    let n = blocks.len();
    let mut y1 = vec![VertexSet::new(); n + 1];
    for &x in r1 {
        let one = VertexSet::from([x]);
        let t = blocks.iter().take_while(|b| g.is_anticomplete(&one, &b.b2)).count();
        if !blocks[t..].iter().all(|b| g.is_complete(&one, &b.b2)) {
            return Err(claim("residue threshold", format!("{x} in R1 has no threshold"), vec![x]));
        }
        y1[t].insert(x);
    }
    let mut y2 = vec![VertexSet::new(); n + 1];
    for &x in r2 {
        let one = VertexSet::from([x]);
        let t = blocks.iter().take_while(|b| g.is_complete(&one, &b.b1)).count();
        if !blocks[t..].iter().all(|b| g.is_anticomplete(&one, &b.b1)) {
            return Err(claim("residue threshold", format!("{x} in R2 has no threshold"), vec![x]));
        }
        y2[t].insert(x);
    }
    Ok((y1, y2))
}

/// A pair `x ∈ Y^a_1`, `y ∈ Y^b_2` against the slice pattern: adjacent with
/// `a > b`, or non-adjacent with `a < b`. In a curious graph the classes are
/// then neighbours and both vertices fit block `max(a, b)`, returned 0-based.
fn misplaced_pair(g: &Graph, y1: &[VertexSet], y2: &[VertexSet]) -> Result<Option<(VertexId, VertexId, usize)>> {
    for (a, xs) in y1.iter().enumerate() {
        for (b, ys) in y2.iter().enumerate() {
            for &x in xs {
                for &y in ys {
                    if (a > b && g.adjacent(x, y)) || (a < b && !g.adjacent(x, y)) {
                        if a.abs_diff(b) != 1 {
                            return Err(claim(
                                "residue pair",
                                format!("{x} and {y} break the slice pattern across more than one block"),
                                vec![x, y],
                            ));
                        }
                        return Ok(Some((x, y, a.max(b) - 1)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Computes the block structure of a curious graph in which some pair of
/// parts has an induced 2P2 (always the case for type 2 and 3).
pub fn block_structure(g: &Graph, p: &TriPartition) -> Result<BlockStructure> {
    let t = curious_type(g, p)?;
    let frame = frame_for(g, p)
        .ok_or_else(|| Error::Precondition(format!("curious type is {t}, blocks need a pair with a 2P2")))?;
    let q = frame.apply(p);

    // Greedy maximal packing of vertex-disjoint 2P2s in G[V1 ∪ V2].
    let (mut free1, mut free2) = (q.v1.clone(), q.v2.clone());
    let mut packing = Vec::new();
    while let Some(h) = find_2p2(g, &free1, &free2) {
        for (k, v) in h.iter().enumerate() {
            if k % 2 == 0 { free1.remove(v) } else { free2.remove(v) };
        }
        packing.push(h);
    }

    // Group the 2P2s by how V3 sees them.
    let mut groups: BTreeMap<Vec<u8>, Block> = BTreeMap::new();
    for h in &packing {
        let sig = q.v3.iter().map(|&z| side(g, z, h)).collect::<Result<Vec<u8>>>()?;
        let b = groups.entry(sig).or_insert(Block { b1: VertexSet::new(), b2: VertexSet::new() });
        b.b1.extend([h[0], h[2]]);
        b.b2.extend([h[1], h[3]]);
    }
    let mut blocks: Vec<Block> = groups.into_values().collect();

    // Order by <_B. Each pair must be comparable in exactly one direction,
    // and a distinguishing vertex of V3 must agree with that direction.
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let (ij, ji) = (before(g, &blocks[i], &blocks[j]), before(g, &blocks[j], &blocks[i]));
            if ij == ji {
                let w = blocks[i].b1.iter().chain(&blocks[j].b1).copied().collect();
                return Err(claim("block order", format!("blocks {i} and {j} are not comparable"), w));
            }
            let (lo, hi) = if ij { (&blocks[i], &blocks[j]) } else { (&blocks[j], &blocks[i]) };
            let agrees = q.v3.iter().any(|&z| {
                let one = VertexSet::from([z]);
                g.is_complete(&one, &lo.b2) && g.is_complete(&one, &hi.b1)
            });
            if !agrees {
                return Err(claim("block order", "no vertex of V3 orients the pair of blocks", vec![]));
            }
        }
    }
    let rank = |b: &Block, all: &[Block]| all.iter().filter(|o| *o != b && before(g, o, b)).count();
    let snapshot = blocks.clone();
    blocks.sort_by_key(|b| rank(b, &snapshot));
    check_chain(g, &blocks, &q.v3)?;

    // Update procedure, with the chain property re-checked after every move.
    // Once it is exhausted the residues are thresholded; a residue pair in
    // neighbouring threshold classes whose adjacency breaks the slice pattern
    // is moved into the block between them and the procedure starts over.
    let in_blocks: VertexSet = blocks.iter().flat_map(|b| b.b1.iter().chain(&b.b2)).copied().collect();
    let mut r1: VertexSet = q.v1.difference(&in_blocks).copied().collect();
    let mut r2: VertexSet = q.v2.difference(&in_blocks).copied().collect();
    let mut updates = Vec::new();
    let (y1, y2) = loop {
        let split = |x: VertexId, other: &VertexSet| {
            let nb = g.neighbours_in(x, other);
            !nb.is_empty() && nb.len() < other.len()
        };
        let found = r1
            .iter()
            .find_map(|&x| blocks.iter().position(|b| split(x, &b.b2)).map(|j| (x, j, 1)))
            .or_else(|| r2.iter().find_map(|&x| blocks.iter().position(|b| split(x, &b.b1)).map(|j| (x, j, 2))));
        let moves = match found {
            Some((x, j, 1)) => vec![(x, j, 1)],
            Some((x, j, _)) => vec![(x, j, 2)],
            None => {
                let (y1, y2) = thresholds(g, &blocks, &r1, &r2)?;
                match misplaced_pair(g, &y1, &y2)? {
                    Some((x, y, j)) => vec![(x, j, 1), (y, j, 2)],
                    None => break (y1, y2),
                }
            }
        };
        for (x, j, s) in moves {
            if s == 1 {
                r1.remove(&x);
                blocks[j].b1.insert(x);
            } else {
                r2.remove(&x);
                blocks[j].b2.insert(x);
            }
            updates.push((x, j));
        }
        let (x, j) = *updates.last().expect("just pushed");
        check_chain(g, &blocks, &q.v3).map_err(|e| match e {
            Error::Claim { detail, witness, .. } => {
                claim("update step", format!("after moving {x} into block {}: {detail}", j + 1), witness)
            }
            e => e,
        })?;
    };

    let v3 = check_chain(g, &blocks, &q.v3)?;
    Ok(BlockStructure { frame, packing, blocks, updates, r1, r2, y1, y2, v3 })
}

/// Slices a curious graph of type `t ∈ {2, 3}` into slices of type at most
/// `t - 1`. Type 1 is accepted as well: the blocks are then bipartite slices
/// of type 1 and the other slices have type 0. The slices are validated exhaustively and their types checked.
pub fn slice_type23(g: &Graph, p: &TriPartition) -> Result<SliceDecomposition> {
    let t = curious_type(g, p)?;
    let bs = block_structure(g, p)?;
    let d = bs.slices();
    d.validate(g, p)?;
    for (j, s) in d.slices.iter().enumerate() {
        let gs = g.induced_subgraph(&s.vertices())?;
        let ts = curious_type(&gs, s)?;
        let bipartite = s.parts().iter().any(|x| x.is_empty());
        if ts >= t && !bipartite {
            return Err(claim("slice type", format!("slice {j} has type {ts}, not below {t}"), s.vertices().into_iter().collect()));
        }
    }
    Ok(d)
}
