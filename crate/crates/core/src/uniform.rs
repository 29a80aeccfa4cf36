//! k-uniform graphs: copies of a base graph on `k` vertices, with
//! complementations between and inside the classes dictated by a symmetric
//! 0/1 matrix.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cwx::{CwExpr, Label};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformSpec {
    pub k: usize,
    /// Symmetric `k x k` 0/1 matrix.
    #[serde(rename = "K")]
    pub matrix: Vec<Vec<u8>>,
    /// Edges of the base graph on vertices `1..=k`.
    #[serde(rename = "F")]
    pub base: Vec<[u32; 2]>,
    pub m: usize,
}

impl UniformSpec {
    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        if k == 0 || self.m == 0 {
            return Err(Error::Precondition("k and m must be positive".into()));
        }
        if self.matrix.len() != k || self.matrix.iter().any(|r| r.len() != k) {
            return Err(Error::Precondition(format!("matrix must be {k}x{k}")));
        }
        for i in 0..k {
            for j in 0..k {
                if self.matrix[i][j] > 1 || self.matrix[i][j] != self.matrix[j][i] {
                    return Err(Error::Precondition("matrix must be symmetric 0/1".into()));
                }
            }
        }
        for &[a, b] in &self.base {
            if a == b || a == 0 || b == 0 || a as usize > k || b as usize > k {
                return Err(Error::Precondition(format!("bad base edge {a}-{b}")));
            }
        }
        Ok(())
    }

    fn base_adj(&self, i: usize, j: usize) -> bool {
        self.base.iter().any(|&[a, b]| (a as usize, b as usize) == (i, j) || (a as usize, b as usize) == (j, i))
    }

    fn k_at(&self, i: usize, j: usize) -> bool {
        self.matrix[i - 1][j - 1] == 1
    }

    /// Id of the vertex of class `i` (1-based) in copy `c` (0-based).
    pub fn vertex_id(&self, copy: usize, class: usize) -> VertexId {
        VertexId((copy * self.k + class - 1) as u32)
    }

    /// Adjacency in the realization between `(c, i)` and `(d, j)`.
    pub fn adjacent(&self, (c, i): (usize, usize), (d, j): (usize, usize)) -> bool {
        if (c, i) == (d, j) {
            return false;
        }
        if c == d {
            self.base_adj(i, j) ^ self.k_at(i, j)
        } else {
            self.k_at(i, j)
        }
    }

    /// Triangles whose first two classes are complemented: the shape of the
    /// piece around `U` in the P2+P4 decomposition.
    pub fn k3_family(m: usize) -> UniformSpec {
        UniformSpec {
            k: 3,
            matrix: vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
            base: vec![[1, 2], [1, 3], [2, 3]],
            m,
        }
    }
}

/// `m` disjoint copies of the base graph, then a subgraph complementation of
/// class `i` when `K(i,i) = 1` and a bipartite complementation between classes
/// `i` and `j` when `K(i,j) = 1`. Copy `c`, class `i` gets id `c*k + i - 1`.
pub fn realize(spec: &UniformSpec) -> Result<Graph> {
    spec.validate()?;
    let k = spec.k;
    let slots: Vec<(usize, usize)> = (0..spec.m).flat_map(|c| (1..=k).map(move |i| (c, i))).collect();
    let mut edges = Vec::new();
    for (x, &a) in slots.iter().enumerate() {
        for &b in &slots[x + 1..] {
            if spec.adjacent(a, b) {
                edges.push((spec.vertex_id(a.0, a.1), spec.vertex_id(b.0, b.1)));
            }
        }
    }
    Graph::new(slots.iter().map(|&(c, i)| spec.vertex_id(c, i)), edges)
}

/// Expression with at most `2k` labels: each copy is created on staging labels
/// `k+1..=2k`, joined internally and to the earlier copies, then moved onto the
/// live labels `1..=k`.
pub fn uniform_cw_expr(spec: &UniformSpec) -> Result<CwExpr> {
    spec.validate()?;
    let k = spec.k;
    let stage = |i: usize| (k + i) as Label;
    let mut acc: Option<CwExpr> = None;
    for c in 0..spec.m {
        let copy = CwExpr::union_all((1..=k).map(|i| CwExpr::v(stage(i), spec.vertex_id(c, i)))).expect("k >= 1");
        let mut e = match acc {
            None => copy,
            Some(a) => CwExpr::union(a, copy),
        };
        for i in 1..=k {
            for j in i + 1..=k {
                if spec.base_adj(i, j) ^ spec.k_at(i, j) {
                    e = e.join(stage(i), stage(j));
                }
            }
        }
        if c > 0 {
            for i in 1..=k {
                for j in 1..=k {
                    if spec.k_at(i, j) {
                        e = e.join(i as Label, stage(j));
                    }
                }
            }
        }
        for i in 1..=k {
            e = e.relabel(stage(i), i as Label);
        }
        acc = Some(e);
    }
    Ok(acc.expect("m >= 1"))
}

/// A graph recognised as an induced subgraph of a uniform realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformRecognition {
    pub spec: UniformSpec,
    /// Vertex to `(copy, class)` in the realization.
    pub placement: BTreeMap<VertexId, (usize, usize)>,
}

impl UniformRecognition {
    /// True iff the placement is injective and maps `g` edge-exactly into the
    /// realization.
    pub fn certifies(&self, g: &Graph) -> bool {
        if self.spec.validate().is_err() || self.placement.keys().copied().collect::<VertexSet>() != g.vertex_set() {
            return false;
        }
        let slots: Vec<(VertexId, (usize, usize))> = self.placement.iter().map(|(v, s)| (*v, *s)).collect();
        let distinct: std::collections::BTreeSet<_> = slots.iter().map(|(_, s)| *s).collect();
        if distinct.len() != slots.len() {
            return false;
        }
        if slots.iter().any(|&(_, (c, i))| c >= self.spec.m || i == 0 || i > self.spec.k) {
            return false;
        }
        slots.iter().enumerate().all(|(x, &(u, a))| {
            slots[x + 1..].iter().all(|&(v, b)| g.adjacent(u, v) == self.spec.adjacent(a, b))
        })
    }

    /// Expression for `g` itself: the realization's expression restricted to
    /// the placed vertices and renamed back.
    pub fn expr(&self) -> Result<CwExpr> {
        let full = uniform_cw_expr(&self.spec)?;
        let back: BTreeMap<VertexId, VertexId> =
            self.placement.iter().map(|(&v, &(c, i))| (self.spec.vertex_id(c, i), v)).collect();
        let keep: VertexSet = back.keys().copied().collect();
        let r = full.restrict(&keep).ok_or_else(|| Error::Precondition("empty placement".into()))?;
        Ok(r.map_vertices(&|v| back[&v]))
    }
}

/// Recognises the structure `A`, `B`, `U` (independent sets) where every vertex
/// of `A ∪ B` has exactly one neighbour in `U`, every vertex of `U` has at most
/// one neighbour in each of `A` and `B`, and `a ∈ A`, `b ∈ B` are adjacent
/// exactly when their `U`-neighbours differ. Such a graph is an induced
/// subgraph of the realization of [`UniformSpec::k3_family`] with one copy per
/// vertex of `U`.
pub fn recognize_3uniform_special(g: &Graph, a: &VertexSet, b: &VertexSet, u: &VertexSet) -> Option<UniformRecognition> {
    let all: VertexSet = a.iter().chain(b).chain(u).copied().collect();
    if all.len() != a.len() + b.len() + u.len() || all != g.vertex_set() {
        return None;
    }
    if !g.is_independent(a) || !g.is_independent(b) || !g.is_independent(u) || u.is_empty() {
        return None;
    }
    let copy_of: BTreeMap<VertexId, usize> = u.iter().enumerate().map(|(c, &x)| (x, c)).collect();
    let mut placement = BTreeMap::new();
    for (&x, &c) in &copy_of {
        placement.insert(x, (c, 3));
    }
    let mut upper: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (side, class) in [(a, 1), (b, 2)] {
        for &x in side {
            let nu = g.neighbours_in(x, u);
            if nu.len() != 1 {
                return None;
            }
            let y = *nu.first().unwrap();
            if upper.insert(x, y).is_some() {
                return None;
            }
            let slot = (copy_of[&y], class);
            if placement.values().any(|s| *s == slot) {
                return None;
            }
            placement.insert(x, slot);
        }
    }
    for &x in a {
        for &y in b {
            if g.adjacent(x, y) != (upper[&x] != upper[&y]) {
                return None;
            }
        }
    }
    let rec = UniformRecognition { spec: UniformSpec::k3_family(u.len()), placement };
    rec.certifies(g).then_some(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn spec(k: usize, matrix: Vec<Vec<u8>>, base: Vec<[u32; 2]>, m: usize) -> UniformSpec {
        UniformSpec { k, matrix, base, m }
    }

    #[test]
    fn one_class_families() {
        let empty = realize(&spec(1, vec![vec![0]], vec![], 4)).unwrap();
        assert_eq!((empty.n(), empty.edge_count()), (4, 0));
        let clique = realize(&spec(1, vec![vec![1]], vec![], 4)).unwrap();
        assert_eq!(clique.edge_count(), 6);
        let s = spec(1, vec![vec![1]], vec![], 3);
        let e = uniform_cw_expr(&s).unwrap();
        assert!(e.verify(&realize(&s).unwrap()) && e.width() <= 2);
    }

    #[test]
    fn triangle_family_on_six_vertices() {
        let g = realize(&UniformSpec::k3_family(2)).unwrap();
        // Copy c = (a_c, b_c, u_c) with ids 3c, 3c+1, 3c+2.
        let want = Graph::from_edges(6, &[(0, 2), (1, 2), (3, 5), (4, 5), (0, 4), (1, 3)]).unwrap();
        assert_eq!(g, want);
        let s = UniformSpec::k3_family(5);
        let e = uniform_cw_expr(&s).unwrap();
        assert!(e.verify(&realize(&s).unwrap()) && e.width() <= 6);
    }

    #[test]
    fn recognition_round_trip() {
        let g = realize(&UniformSpec::k3_family(3)).unwrap();
        let rec = recognize_3uniform_special(&g, &vset([0, 3, 6]), &vset([1, 4, 7]), &vset([2, 5, 8])).unwrap();
        assert!(rec.certifies(&g));
        assert!(rec.expr().unwrap().verify(&g));
        let bip = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(recognize_3uniform_special(&bip, &vset([0, 1]), &vset([2, 3]), &vset([])).is_none());
        // A vertex of U with two neighbours in A.
        let bad = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(recognize_3uniform_special(&bad, &vset([0, 1]), &vset([]), &vset([2])).is_none());
    }

    #[test]
    fn partial_copies_are_induced_subgraphs() {
        let g = realize(&UniformSpec::k3_family(3)).unwrap().without(&vset([1, 6]));
        let rec = recognize_3uniform_special(&g, &vset([0, 3]), &vset([4, 7]), &vset([2, 5, 8])).unwrap();
        assert!(rec.expr().unwrap().verify(&g));
    }
}
