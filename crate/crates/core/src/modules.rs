//! Modules and modular decomposition.

use serde::{Deserialize, Serialize};

use crate::graph::{Bits, Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MdKind {
    Series,
    Parallel,
    Prime,
}

/// Node of a modular decomposition tree. An internal node's quotient graph has
/// one vertex per child, named by the child's smallest vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum MdTree {
    Leaf { vertex: VertexId },
    Internal { kind: MdKind, quotient: Graph, children: Vec<MdTree> },
}

impl MdTree {
    pub fn vertices(&self) -> VertexSet {
        let mut out = VertexSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut VertexSet) {
        match self {
            MdTree::Leaf { vertex } => {
                out.insert(*vertex);
            }
            MdTree::Internal { children, .. } => children.iter().for_each(|c| c.collect(out)),
        }
    }

    /// Smallest vertex id below this node; names the node in its parent's quotient.
    pub fn representative(&self) -> VertexId {
        match self {
            MdTree::Leaf { vertex } => *vertex,
            MdTree::Internal { quotient, .. } => quotient.vertices()[0],
        }
    }

    /// Rebuilds the graph from the tree alone.
    pub fn recompose(&self) -> Graph {
        match self {
            MdTree::Leaf { vertex } => Graph::new([*vertex], []).expect("single vertex"),
            MdTree::Internal { quotient, children, .. } => {
                let parts: Vec<Graph> = children.iter().map(MdTree::recompose).collect();
                let reps: Vec<VertexId> = children.iter().map(MdTree::representative).collect();
                let mut edges: Vec<(VertexId, VertexId)> = parts.iter().flat_map(Graph::edges).collect();
                for i in 0..parts.len() {
                    for j in i + 1..parts.len() {
                        if quotient.adjacent(reps[i], reps[j]) {
                            for &a in parts[i].vertices() {
                                for &b in parts[j].vertices() {
                                    edges.push((a, b));
                                }
                            }
                        }
                    }
                }
                let ids = parts.iter().flat_map(|p| p.vertices().to_vec());
                Graph::new(ids, edges).expect("children are disjoint")
            }
        }
    }

    /// Internal nodes in pre-order.
    pub fn internal_nodes(&self) -> Vec<&MdTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let MdTree::Internal { children, .. } = t {
                out.push(t);
                stack.extend(children.iter().rev());
            }
        }
        out
    }
}

/// Smallest module of `g` containing both `u` and `v` (positions), as a bitset.
fn minimal_module(g: &Graph, u: usize, v: usize) -> Bits {
    let n = g.n();
    let mut x = Bits::new(n);
    x.set(u);
    x.set(v);
    let mut size = 2;
    loop {
        let mut grew = false;
        for z in 0..n {
            if x.get(z) {
                continue;
            }
            let k = g.row(z).and(&x).count();
            if k != 0 && k != size {
                x.set(z);
                size += 1;
                grew = true;
            }
        }
        if !grew {
            return x;
        }
    }
}

impl Graph {
    /// A smallest module `X` with `1 < |X| < |V|`, ties broken by the sorted id
    /// list; `None` iff the graph is prime or has at most two vertices.
    pub fn find_nontrivial_module(&self) -> Option<VertexSet> {
        let n = self.n();
        if n <= 2 {
            return None;
        }
        let mut best: Option<Vec<VertexId>> = None;
        for u in 0..n {
            for v in u + 1..n {
                let m = minimal_module(self, u, v);
                let size = m.count();
                if size == n {
                    continue;
                }
                let cand: Vec<VertexId> = m.iter().map(|i| self.id_at(i)).collect();
                let better = match &best {
                    None => true,
                    Some(b) => (cand.len(), &cand) < (b.len(), b),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best.map(|b| b.into_iter().collect())
    }

    pub fn is_prime(&self) -> bool {
        self.n() >= 3 && self.find_nontrivial_module().is_none()
    }

    /// Modular decomposition tree. Panics on the empty graph.
    pub fn modular_decomposition(&self) -> MdTree {
        assert!(!self.is_empty(), "modular decomposition of the empty graph");
        decompose(self)
    }
}

fn decompose(g: &Graph) -> MdTree {
    if g.n() == 1 {
        return MdTree::Leaf { vertex: g.vertices()[0] };
    }
    let comps = g.connected_components();
    let (kind, parts) = if comps.len() > 1 {
        (MdKind::Parallel, comps)
    } else {
        let co = g.complement().connected_components();
        if co.len() > 1 {
            (MdKind::Series, co)
        } else {
            (MdKind::Prime, maximal_modules(g))
        }
    };
    let children: Vec<MdTree> =
        parts.iter().map(|p| decompose(&g.induced_subgraph(p).expect("subset"))).collect();
    let reps: VertexSet = children.iter().map(MdTree::representative).collect();
    let quotient = g.induced_subgraph(&reps).expect("subset");
    MdTree::Internal { kind, quotient, children }
}

/// Maximal proper modules of a graph whose graph and complement are connected;
/// these partition the vertex set. Ordered by smallest id.
fn maximal_modules(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mut p = Bits::new(n);
        p.set(v);
        for w in 0..n {
            if w != v {
                let m = minimal_module(g, v, w);
                if m.count() < n {
                    p.or_assign(&m);
                }
            }
        }
        for i in p.iter() {
            assigned[i] = true;
        }
        out.push(g.from_bits(&p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    #[test]
    fn p4_is_prime() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.find_nontrivial_module(), None);
        match p4.modular_decomposition() {
            MdTree::Internal { kind, children, .. } => {
                assert_eq!(kind, MdKind::Prime);
                assert_eq!(children.len(), 4);
            }
            _ => panic!("expected internal root"),
        }
    }

    #[test]
    fn small_modules() {
        let p3 = Graph::with_ids(&[1, 2, 3], &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(p3.find_nontrivial_module(), Some(vset([1, 3])));
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.find_nontrivial_module(), Some(vset([0, 1])));
    }

    #[test]
    fn two_p2_is_parallel_of_series() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let MdTree::Internal { kind, children, .. } = g.modular_decomposition() else { panic!() };
        assert_eq!(kind, MdKind::Parallel);
        for c in &children {
            assert!(matches!(c, MdTree::Internal { kind: MdKind::Series, .. }));
        }
    }

    #[test]
    fn claw_groups_its_leaves() {
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let MdTree::Internal { kind, children, .. } = claw.modular_decomposition() else { panic!() };
        assert_eq!(kind, MdKind::Series);
        assert!(children.iter().any(|c| c.vertices() == vset([1, 2, 3])));
        assert_eq!(claw.modular_decomposition().recompose(), claw);
    }
}
