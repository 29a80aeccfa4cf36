//! Closure search over explicit labelled graphs, shared by the oracle tests
//! and the acceptance run. It applies the four operations directly and never
//! uses the oracle's reasoning about modules or induced subexpressions.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use trifree_cw::Graph;

#[derive(Clone, PartialEq, Eq, Hash)]
struct St {
    mask: u32,
    labels: Vec<u8>,
    edges: u64,
}

pub struct Closure {
    n: usize,
    k: u8,
    adj: Vec<u32>,
    edge_index: HashMap<(usize, usize), usize>,
    all_edges: u64,
}

impl Closure {
    pub fn new(g: &Graph, k: u8) -> Self {
        let n = g.n();
        let mut adj = vec![0u32; n];
        let mut edge_index = HashMap::new();
        for a in 0..n {
            for b in a + 1..n {
                if g.adj_idx(a, b) {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                    let idx = edge_index.len();
                    edge_index.insert((a, b), idx);
                }
            }
        }
        let all_edges = if edge_index.is_empty() { 0 } else { (1u64 << edge_index.len()) - 1 };
        Closure { n, k, adj, edge_index, all_edges }
    }

    fn canon(&self, mut s: St) -> Option<St> {
        let mut map = [0u8; 64];
        let mut next = 1u8;
        for l in s.labels.iter_mut().filter(|l| **l != 0) {
            if map[*l as usize] == 0 {
                map[*l as usize] = next;
                next += 1;
            }
            *l = map[*l as usize];
        }
        if next - 1 > self.k {
            return None;
        }
        // Vertices sharing a label are treated alike from now on: they must
        // already be joined if adjacent, and agree on every vertex not yet created.
        for a in 0..self.n {
            for b in a + 1..self.n {
                if s.labels[a] != 0 && s.labels[a] == s.labels[b] {
                    if let Some(&e) = self.edge_index.get(&(a, b)) {
                        if s.edges >> e & 1 == 0 {
                            return None;
                        }
                    }
                    if self.adj[a] & !s.mask != self.adj[b] & !s.mask {
                        return None;
                    }
                }
            }
        }
        Some(s)
    }

    fn join(&self, s: &St, i: u8, j: u8) -> Option<St> {
        let mut t = s.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                if s.labels[a] == i && s.labels[b] == j {
                    let key = (a.min(b), a.max(b));
                    let e = *self.edge_index.get(&key)?;
                    t.edges |= 1 << e;
                }
            }
        }
        Some(t)
    }

    /// True iff the target graph is reachable with at most `k` labels.
    pub fn reachable(&self) -> bool {
        let mut seen: HashSet<St> = HashSet::new();
        let mut by_mask: HashMap<u32, Vec<St>> = HashMap::new();
        let mut queue = VecDeque::new();
        for v in 0..self.n {
            let mut labels = vec![0u8; self.n];
            labels[v] = 1;
            let s = self.canon(St { mask: 1 << v, labels, edges: 0 }).unwrap();
            queue.push_back(s);
        }
        let full = (1u32 << self.n) - 1;
        while let Some(s) = queue.pop_front() {
            if !seen.insert(s.clone()) {
                continue;
            }
            if s.mask == full && s.edges == self.all_edges {
                return true;
            }
            by_mask.entry(s.mask).or_default().push(s.clone());
            let mut next = Vec::new();
            for i in 1..=self.k {
                for j in 1..=self.k {
                    if i == j {
                        continue;
                    }
                    if let Some(t) = self.join(&s, i, j) {
                        next.push(t);
                    }
                    let mut t = s.clone();
                    t.labels.iter_mut().filter(|l| **l == i).for_each(|l| *l = j);
                    next.push(t);
                }
            }
            let partners: Vec<St> = by_mask
                .iter()
                .filter(|(m, _)| **m & s.mask == 0)
                .flat_map(|(_, v)| v.iter().cloned())
                .collect();
            for p in partners {
                // Every injective renaming of the partner's labels into 1..=k.
                let used: Vec<u8> = {
                    let mut u: Vec<u8> = p.labels.iter().copied().filter(|&l| l != 0).collect();
                    u.sort_unstable();
                    u.dedup();
                    u
                };
                for f in injections(used.len(), self.k) {
                    let mut labels = s.labels.clone();
                    for (a, &l) in p.labels.iter().enumerate() {
                        if l != 0 {
                            labels[a] = f[used.iter().position(|&x| x == l).unwrap()];
                        }
                    }
                    next.push(St { mask: s.mask | p.mask, labels, edges: s.edges | p.edges });
                }
            }
            for t in next {
                if let Some(c) = self.canon(t) {
                    if !seen.contains(&c) {
                        queue.push_back(c);
                    }
                }
            }
        }
        false
    }
}

fn injections(m: usize, k: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(m: usize, k: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for l in 1..=k {
            if !cur.contains(&l) {
                cur.push(l);
                rec(m, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(m, k, &mut cur, &mut out);
    out
}

pub fn brute_cw(g: &Graph) -> usize {
    (1..=g.n() as u8).find(|&k| Closure::new(g, k).reachable()).unwrap() as usize
}

pub fn k22() -> Graph {
    Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

