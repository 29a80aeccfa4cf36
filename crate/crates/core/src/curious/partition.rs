use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Three disjoint independent sets covering the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriPartition {
    #[serde(rename = "V1")]
    pub v1: VertexSet,
    #[serde(rename = "V2")]
    pub v2: VertexSet,
    #[serde(rename = "V3")]
    pub v3: VertexSet,
}

impl TriPartition {
    pub fn new(v1: VertexSet, v2: VertexSet, v3: VertexSet) -> Self {
        TriPartition { v1, v2, v3 }
    }

    pub fn from_parts([v1, v2, v3]: [VertexSet; 3]) -> Self {
        TriPartition { v1, v2, v3 }
    }

    pub fn parts(&self) -> [&VertexSet; 3] {
        [&self.v1, &self.v2, &self.v3]
    }

    pub fn into_parts(self) -> [VertexSet; 3] {
        [self.v1, self.v2, self.v3]
    }

    pub fn part(&self, i: usize) -> &VertexSet {
        self.parts()[i % 3]
    }

    /// `(V1, V2, V3) -> (V_{1+r}, V_{2+r}, V_{3+r})`.
    pub fn rotate(&self, r: usize) -> TriPartition {
        TriPartition::from_parts([0, 1, 2].map(|i| self.part(i + r).clone()))
    }

    /// Exchanges the first two parts.
    pub fn swap12(&self) -> TriPartition {
        TriPartition::new(self.v2.clone(), self.v1.clone(), self.v3.clone())
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: crate::graph::VertexId) -> Option<usize> {
        self.parts().iter().position(|p| p.contains(&v))
    }

    pub fn vertices(&self) -> VertexSet {
        self.v1.iter().chain(&self.v2).chain(&self.v3).copied().collect()
    }

    pub fn restrict(&self, s: &VertexSet) -> TriPartition {
        TriPartition::from_parts(self.parts().map(|p| p.intersection(s).copied().collect()))
    }

    /// Checks disjointness, coverage of `V(g)` and independence of each part.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let [a, b, c] = self.parts();
        let total = a.len() + b.len() + c.len();
        let all = self.vertices();
        if all.len() != total {
            return Err(Error::Partition("parts overlap".into()));
        }
        if all != g.vertex_set() {
            return Err(Error::Partition("parts do not cover exactly the vertex set".into()));
        }
        for (i, p) in self.parts().iter().enumerate() {
            if !g.is_independent(p) {
                return Err(Error::Partition(format!("part V{} is not independent", i + 1)));
            }
        }
        Ok(())
    }
}
