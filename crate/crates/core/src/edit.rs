//! Edit operations (vertex deletion, bipartite and subgraph complementation)
//! and the log that links an input graph to its decomposed pieces.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::io::to_json;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EditOp {
    VertexDeletion { vertex: VertexId },
    BipartiteComplementation { s: VertexSet, t: VertexSet },
    SubgraphComplementation { s: VertexSet },
}

impl Graph {
    pub fn apply_edit(&self, op: &EditOp) -> Result<Graph> {
        match op {
            EditOp::VertexDeletion { vertex } => {
                if !self.contains(*vertex) {
                    return Err(Error::UnknownVertex(*vertex));
                }
                Ok(self.without(&[*vertex].into_iter().collect()))
            }
            EditOp::BipartiteComplementation { s, t } => {
                self.check_subset(s)?;
                self.check_subset(t)?;
                if let Some(&v) = s.intersection(t).next() {
                    return Err(Error::OverlappingSides(v));
                }
                let mut g = self.clone();
                for &a in s {
                    for &b in t {
                        g.toggle_idx(self.idx(a), self.idx(b));
                    }
                }
                Ok(g)
            }
            EditOp::SubgraphComplementation { s } => {
                self.check_subset(s)?;
                let mut g = self.clone();
                let v: Vec<usize> = s.iter().map(|&x| self.idx(x)).collect();
                for (i, &a) in v.iter().enumerate() {
                    for &b in &v[i + 1..] {
                        g.toggle_idx(a, b);
                    }
                }
                Ok(g)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditCounts {
    pub deletions: usize,
    pub bipartite_complementations: usize,
    pub subgraph_complementations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditLog {
    pub input_graph_hash: String,
    pub ops: Vec<EditOp>,
    pub counts: EditCounts,
}

/// Hex SHA-256 of the graph's canonical JSON form.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(to_json(g).as_bytes()))
}

impl EditLog {
    pub fn new(input: &Graph) -> Self {
        EditLog { input_graph_hash: graph_hash(input), ops: Vec::new(), counts: EditCounts::default() }
    }

    pub fn push(&mut self, op: EditOp) {
        match op {
            EditOp::VertexDeletion { .. } => self.counts.deletions += 1,
            EditOp::BipartiteComplementation { .. } => self.counts.bipartite_complementations += 1,
            EditOp::SubgraphComplementation { .. } => self.counts.subgraph_complementations += 1,
        }
        self.ops.push(op);
    }

    /// Tally of `ops` by kind, independent of the stored counters.
    pub fn tally(&self) -> EditCounts {
        let mut c = EditCounts::default();
        for op in &self.ops {
            match op {
                EditOp::VertexDeletion { .. } => c.deletions += 1,
                EditOp::BipartiteComplementation { .. } => c.bipartite_complementations += 1,
                EditOp::SubgraphComplementation { .. } => c.subgraph_complementations += 1,
            }
        }
        c
    }

    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        self.ops.iter().try_fold(g.clone(), |h, op| h.apply_edit(op))
    }
}
