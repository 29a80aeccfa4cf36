//! Simple undirected graphs with stable vertex ids and bitset adjacency.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque vertex identifier. Ids survive edits; a deleted id is never reused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Builds a [`VertexSet`] from raw ids.
pub fn vset<I: IntoIterator<Item = u32>>(ids: I) -> VertexSet {
    ids.into_iter().map(VertexId).collect()
}

/// Fixed-width bitset over vertex positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect() }
    }

    pub fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Immutable simple undirected graph. Vertices are kept sorted by id; position
/// `i` in [`Graph::vertices`] indexes row `i` of the adjacency bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    pos: HashMap<VertexId, usize>,
    adj: Vec<Bits>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(u32, u32)> = self.edges().into_iter().map(|(a, b)| (a.0, b.0)).collect();
        f.debug_struct("Graph")
            .field("ids", &self.ids.iter().map(|v| v.0).collect::<Vec<_>>())
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Graph on the given ids with the given edges (pairs of ids).
    pub fn new<V, E>(ids: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut ids: Vec<VertexId> = ids.into_iter().collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        let pos: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut adj = vec![Bits::new(n); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let a = *pos.get(&u).ok_or(Error::UnknownVertex(u))?;
            let b = *pos.get(&v).ok_or(Error::UnknownVertex(v))?;
            adj[a].set(b);
            adj[b].set(a);
        }
        Ok(Graph { ids, pos, adj })
    }

    /// Graph on ids `0..n` with edges given as raw pairs.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        Graph::new((0..n).map(VertexId), edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))))
    }

    /// Graph on explicit raw ids with raw id edges.
    pub fn with_ids(ids: &[u32], edges: &[(u32, u32)]) -> Result<Graph> {
        Graph::new(ids.iter().map(|&v| VertexId(v)), edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))))
    }

    pub fn empty() -> Graph {
        Graph { ids: Vec::new(), pos: HashMap::new(), adj: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.ids.iter().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    pub(crate) fn idx(&self, v: VertexId) -> usize {
        self.pos[&v]
    }

    pub fn id_at(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    /// Adjacency row of the vertex at position `i`.
    pub fn row(&self, i: usize) -> &Bits {
        &self.adj[i]
    }

    #[inline]
    pub fn adj_idx(&self, a: usize, b: usize) -> bool {
        self.adj[a].get(b)
    }

    /// False for unknown ids.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        match (self.pos.get(&u), self.pos.get(&v)) {
            (Some(&a), Some(&b)) => self.adj[a].get(b),
            _ => false,
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[self.idx(v)].count()
    }

    pub fn neighbours(&self, v: VertexId) -> VertexSet {
        self.adj[self.idx(v)].iter().map(|i| self.ids[i]).collect()
    }

    /// Neighbours of `v` inside `set`.
    pub fn neighbours_in(&self, v: VertexId, set: &VertexSet) -> VertexSet {
        let a = self.idx(v);
        set.iter().copied().filter(|&w| self.pos.get(&w).is_some_and(|&b| self.adj[a].get(b))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (a, row) in self.adj.iter().enumerate() {
            for b in row.iter().filter(|&b| b > a) {
                out.push((self.ids[a], self.ids[b]));
            }
        }
        out
    }

    pub fn to_bits(&self, set: &VertexSet) -> Result<Bits> {
        let mut b = Bits::new(self.n());
        for &v in set {
            b.set(*self.pos.get(&v).ok_or(Error::UnknownVertex(v))?);
        }
        Ok(b)
    }

    pub fn from_bits(&self, bits: &Bits) -> VertexSet {
        bits.iter().map(|i| self.ids[i]).collect()
    }

    pub(crate) fn check_subset(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|v| !self.contains(**v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        let ids: Vec<VertexId> = s.iter().copied().collect();
        let pos: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let adj = ids
            .iter()
            .map(|&u| {
                let mut row = Bits::new(n);
                let a = self.idx(u);
                for (j, &w) in ids.iter().enumerate() {
                    if self.adj[a].get(self.idx(w)) {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        Ok(Graph { ids, pos, adj })
    }

    /// Graph without the vertices of `s` (unknown ids are ignored).
    pub fn without(&self, s: &VertexSet) -> Graph {
        let keep: VertexSet = self.ids.iter().copied().filter(|v| !s.contains(v)).collect();
        self.induced_subgraph(&keep).expect("subset of own vertices")
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|a| {
                let mut row = Bits::new(n);
                for b in (0..n).filter(|&b| b != a && !self.adj[a].get(b)) {
                    row.set(b);
                }
                row
            })
            .collect();
        Graph { ids: self.ids.clone(), pos: self.pos.clone(), adj }
    }

    /// Disjoint union; fails if the id sets overlap.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if let Some(&v) = other.ids.iter().find(|v| self.contains(**v)) {
            return Err(Error::DuplicateVertex(v));
        }
        let ids = self.ids.iter().chain(&other.ids).copied();
        let edges = self.edges().into_iter().chain(other.edges());
        Graph::new(ids, edges)
    }

    /// Same graph with ids renamed through `f` (which must be injective).
    pub fn relabel_ids(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Graph> {
        Graph::new(self.ids.iter().map(|&v| f(v)), self.edges().into_iter().map(|(a, b)| (f(a), f(b))))
    }

    pub(crate) fn toggle_idx(&mut self, a: usize, b: usize) {
        self.adj[a].toggle(b);
        self.adj[b].toggle(a);
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let v: Vec<usize> = s.iter().filter_map(|x| self.index_of(*x)).collect();
        v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| !self.adj[a].get(b)))
    }

    /// Every vertex of `a` adjacent to every vertex of `b` (vacuous if either is empty).
    pub fn is_complete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|&x| b.iter().all(|&y| self.adjacent(x, y)))
    }

    pub fn is_anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|&x| b.iter().all(|&y| !self.adjacent(x, y)))
    }

    /// Maximal connected sets, ordered by smallest id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = VertexSet::new();
            while let Some(a) = stack.pop() {
                comp.insert(self.ids[a]);
                for b in self.adj[a].iter() {
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Two-colouring where the smallest vertex of each component goes to the first side.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.n();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                let c = colour[a].unwrap();
                for b in self.adj[a].iter() {
                    match colour[b] {
                        None => {
                            colour[b] = Some(!c);
                            stack.push(b);
                        }
                        Some(d) if d == c => return None,
                        _ => {}
                    }
                }
            }
        }
        let mut a = VertexSet::new();
        let mut b = VertexSet::new();
        for (i, c) in colour.into_iter().enumerate() {
            if c == Some(false) {
                a.insert(self.ids[i]);
            } else {
                b.insert(self.ids[i]);
            }
        }
        Some((a, b))
    }

    /// Unordered pairs of nonadjacent vertices with equal neighbourhoods.
    pub fn false_twins(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.adj[a].get(b) && self.adj[a] == self.adj[b] {
                    out.push((self.ids[a], self.ids[b]));
                }
            }
        }
        out
    }

    /// True if no vertex outside `s` distinguishes two vertices of `s`.
    pub fn is_module(&self, s: &VertexSet) -> bool {
        let Ok(bits) = self.to_bits(s) else { return false };
        let mut it = s.iter();
        let Some(&first) = it.next() else { return true };
        let reference = self.adj[self.idx(first)].and_not(&bits);
        it.all(|&v| self.adj[self.idx(v)].and_not(&bits) == reference)
    }

    /// Vertex id list in the order of a reference vector, useful for maps.
    pub fn id_map<T: Clone>(&self, values: &[T]) -> BTreeMap<VertexId, T> {
        self.ids.iter().copied().zip(values.iter().cloned()).collect()
    }

    /// Largest id present, if any.
    pub fn max_id(&self) -> Option<VertexId> {
        self.ids.last().copied()
    }
}
