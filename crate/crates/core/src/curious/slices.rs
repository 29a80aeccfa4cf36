use serde::{Deserialize, Serialize};

use super::TriPartition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Ordered slices `G^0, ..., G^l` of a 3-partite graph. Slice `j` holds the
/// sets `V_1^j, V_2^j, V_3^j`. For `j < k` (part indices mod 3), `V_i^j` is
/// complete to `V_{i+1}^k` and anti-complete to `V_{i+2}^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDecomposition {
    pub slices: Vec<TriPartition>,
}

impl SliceDecomposition {
    pub fn new(slices: Vec<TriPartition>) -> Self {
        SliceDecomposition { slices }
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.slices.iter().flat_map(|s| s.vertices()).collect()
    }

    /// The partition obtained by merging the slices part by part.
    pub fn partition(&self) -> TriPartition {
        let mut parts: [VertexSet; 3] = Default::default();
        for s in &self.slices {
            for (i, p) in s.parts().into_iter().enumerate() {
                parts[i].extend(p.iter().copied());
            }
        }
        TriPartition::from_parts(parts)
    }

    /// Induced slice graphs, in order.
    pub fn slice_graphs(&self, g: &Graph) -> Result<Vec<Graph>> {
        self.slices.iter().map(|s| g.induced_subgraph(&s.vertices())).collect()
    }

    /// Indices of the non-empty slices.
    pub fn nonempty(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.slices.len()).filter(|&j| !self.slices[j].vertices().is_empty())
    }

    /// Reverses the slice order and exchanges the first two parts in every
    /// slice. The slice pattern is preserved by this move.
    pub fn mirrored(&self) -> SliceDecomposition {
        SliceDecomposition::new(self.slices.iter().rev().map(TriPartition::swap12).collect())
    }

    /// Rotates the parts of every slice, as [`TriPartition::rotate`] does.
    pub fn rotated(&self, r: usize) -> SliceDecomposition {
        SliceDecomposition::new(self.slices.iter().map(|s| s.rotate(r)).collect())
    }

    /// Exhaustive check that the slices partition `p` part by part and that
    /// every pair of vertices in distinct slices follows the slice pattern.
    pub fn validate(&self, g: &Graph, p: &TriPartition) -> Result<()> {
        p.validate(g)?;
        let merged = self.partition();
        let total: usize = self.slices.iter().map(|s| s.vertices().len()).sum();
        if merged != *p || total != p.vertices().len() {
            return Err(Error::Partition("slices do not partition the parts".into()));
        }
        for (j, sj) in self.slices.iter().enumerate() {
            for sk in &self.slices[j + 1..] {
                for i in 0..3 {
                    let a = sj.part(i);
                    if let Some(w) = violation(g, a, sk.part(i + 1), true).or_else(|| violation(g, a, sk.part(i + 2), false)) {
                        return Err(Error::claim(
                            "slice pattern",
                            format!("pair {}-{} breaks the pattern between slices", w[0], w[1]),
                            w.to_vec(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn violation(g: &Graph, a: &VertexSet, b: &VertexSet, want_edge: bool) -> Option<[crate::VertexId; 2]> {
    a.iter().find_map(|&x| b.iter().find(|&&y| g.adjacent(x, y) != want_edge).map(|&y| [x, y]))
}

/// Builds the graph with the given slices, each slice's internal edges taken
/// from `slice_graph`, and all edges between slices dictated by the pattern.
pub fn assemble(slices: &[(TriPartition, Graph)]) -> Result<Graph> {
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for (j, (pj, gj)) in slices.iter().enumerate() {
        ids.extend(gj.vertices().iter().copied());
        edges.extend(gj.edges());
        for (pk, _) in &slices[j + 1..] {
            for i in 0..3 {
                for &x in pj.part(i) {
                    edges.extend(pk.part(i + 1).iter().map(|&y| (x, y)));
                }
            }
        }
    }
    Graph::new(ids, edges)
}
