//! Induced-subgraph search for the fixed small patterns.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curious::TriPartition;
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, VertexId, VertexSet};

/// A named small graph on ids `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
}

fn path_edges(offset: u32, len: u32) -> Vec<(u32, u32)> {
    (offset..offset + len.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

impl Pattern {
    fn build(name: &str, n: u32, edges: Vec<(u32, u32)>) -> Pattern {
        Pattern { name: name.to_string(), graph: Graph::from_edges(n, &edges).expect("pattern") }
    }

    pub fn path(n: u32) -> Pattern {
        Pattern::build(&format!("P{n}"), n, path_edges(0, n))
    }

    pub fn cycle(n: u32) -> Pattern {
        assert!(n >= 3);
        let mut e = path_edges(0, n);
        e.push((n - 1, 0));
        Pattern::build(&format!("C{n}"), n, e)
    }

    pub fn complete(n: u32) -> Pattern {
        let e = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Pattern::build(&format!("K{n}"), n, e)
    }

    pub fn independent(n: u32) -> Pattern {
        Pattern::build(&format!("{n}P1"), n, Vec::new())
    }

    pub fn k3() -> Pattern {
        Pattern::complete(3)
    }

    pub fn two_p2() -> Pattern {
        Pattern::build("2P2", 4, vec![(0, 1), (2, 3)])
    }

    pub fn p2_p4() -> Pattern {
        let mut e = vec![(0, 1)];
        e.extend(path_edges(2, 4));
        Pattern::build("P2+P4", 6, e)
    }

    pub fn p1_p5() -> Pattern {
        Pattern::build("P1+P5", 6, path_edges(1, 5))
    }

    pub fn p1_2p2() -> Pattern {
        Pattern::build("P1+2P2", 5, vec![(1, 2), (3, 4)])
    }

    /// Subdivided claw: centre 0 with legs of length 1, 2 and 3.
    pub fn s123() -> Pattern {
        Pattern::build("S1,2,3", 7, vec![(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)])
    }

    pub fn claw() -> Pattern {
        Pattern::build("K1,3", 4, vec![(0, 1), (0, 2), (0, 3)])
    }

    /// Every named pattern the constructions refer to.
    pub fn catalog() -> Vec<Pattern> {
        vec![
            Pattern::k3(),
            Pattern::two_p2(),
            Pattern::path(4),
            Pattern::independent(3),
            Pattern::cycle(5),
            Pattern::cycle(7),
            Pattern::p2_p4(),
            Pattern::p1_p5(),
            Pattern::p1_2p2(),
            Pattern::path(6),
            Pattern::path(7),
            Pattern::s123(),
            Pattern::claw(),
        ]
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Catalog names, plus `Pn`, `Cn`, `Kn` and `nP1` for any n.
    fn from_str(s: &str) -> Result<Pattern> {
        let s = s.trim();
        if let Some(p) = Pattern::catalog().into_iter().find(|p| p.name == s) {
            return Ok(p);
        }
        let num = |t: &str| t.parse::<u32>().ok().filter(|&n| n >= 1);
        let parsed = if let Some(n) = s.strip_suffix("P1").and_then(num) {
            Some(Pattern::independent(n))
        } else if let Some(n) = s.strip_prefix('P').and_then(num) {
            Some(Pattern::path(n))
        } else if let Some(n) = s.strip_prefix('C').and_then(num).filter(|&n| n >= 3) {
            Some(Pattern::cycle(n))
        } else {
            s.strip_prefix('K').and_then(num).map(Pattern::complete)
        };
        parsed.ok_or_else(|| Error::Precondition(format!("unknown pattern {s:?}")))
    }
}

/// An induced copy of a pattern: pattern vertex id to host vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pattern: String,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
}

impl Witness {
    pub fn host_vertices(&self) -> Vec<VertexId> {
        self.vertex_map.values().copied().collect()
    }

    /// True if the map is injective and preserves adjacency and non-adjacency.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let hv: VertexSet = self.vertex_map.values().copied().collect();
        if hv.len() != self.vertex_map.len() || self.vertex_map.len() != pattern.n() {
            return false;
        }
        let pairs: Vec<_> = self.vertex_map.iter().collect();
        pairs.iter().all(|(p, h)| pattern.contains(**p) && host.contains(**h))
            && pairs.iter().enumerate().all(|(i, (p, h))| {
                pairs[i + 1..].iter().all(|(q, k)| pattern.adjacent(**p, **q) == host.adjacent(**h, **k))
            })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hv: Vec<String> = self.vertex_map.values().map(|v| v.to_string()).collect();
        write!(f, "{} on [{}]", self.pattern, hv.join(", "))
    }
}

/// Lexicographically least induced embedding of `h` into `g`, comparing the
/// tuple of host ids listed in pattern-vertex order.
pub fn find_induced(g: &Graph, h: &Graph) -> Option<Vec<VertexId>> {
    let k = h.n();
    let n = g.n();
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let mut all = Bits::new(n);
    (0..n).for_each(|i| all.set(i));
    let non: Vec<Bits> = (0..n)
        .map(|i| {
            let mut r = all.and_not(g.row(i));
            r.clear(i);
            r
        })
        .collect();
    let hdeg: Vec<usize> = (0..k).map(|i| h.row(i).count()).collect();
    let gdeg: Vec<usize> = (0..n).map(|i| g.row(i).count()).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut used = Bits::new(n);

    fn dfs(
        g: &Graph,
        h: &Graph,
        non: &[Bits],
        all: &Bits,
        hdeg: &[usize],
        gdeg: &[usize],
        chosen: &mut Vec<usize>,
        used: &mut Bits,
    ) -> bool {
        let p = chosen.len();
        if p == h.n() {
            return true;
        }
        let mut cand = all.and_not(used);
        for (q, &hq) in chosen.iter().enumerate() {
            cand = if h.adj_idx(p, q) { cand.and(g.row(hq)) } else { cand.and(&non[hq]) };
        }
        for c in cand.iter().collect::<Vec<_>>() {
            if gdeg[c] < hdeg[p] {
                continue;
            }
            chosen.push(c);
            used.set(c);
            if dfs(g, h, non, all, hdeg, gdeg, chosen, used) {
                return true;
            }
            used.clear(c);
            chosen.pop();
        }
        false
    }

    if dfs(g, h, &non, &all, &hdeg, &gdeg, &mut chosen, &mut used) {
        Some(chosen.into_iter().map(|i| g.id_at(i)).collect())
    } else {
        None
    }
}

pub fn find_pattern(g: &Graph, p: &Pattern) -> Option<Witness> {
    find_induced(g, &p.graph).map(|hosts| Witness {
        pattern: p.name.clone(),
        vertex_map: p.graph.vertices().iter().copied().zip(hosts).collect(),
    })
}

/// First witness over `patterns` in the given order, `None` if `g` is free of all.
pub fn first_witness(g: &Graph, patterns: &[Pattern]) -> Option<Witness> {
    patterns.iter().find_map(|p| find_pattern(g, p))
}

pub fn is_free(g: &Graph, patterns: &[Pattern]) -> bool {
    first_witness(g, patterns).is_none()
}

pub fn find_induced_cycle(g: &Graph, length: u32) -> Option<Witness> {
    if length < 3 {
        return None;
    }
    find_pattern(g, &Pattern::cycle(length))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RainbowKind {
    K3,
    #[serde(rename = "3P1")]
    ThreeP1,
}

/// A triple with one vertex per part inducing a triangle or an independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rainbow {
    pub kind: RainbowKind,
    pub triple: [VertexId; 3],
}

/// First rainbow K3 or 3P1 in lexicographic triple order; `None` iff the graph
/// is curious with respect to the partition.
pub fn rainbow_violation(g: &Graph, p: &TriPartition) -> Result<Option<Rainbow>> {
    p.validate(g)?;
    let [a, b, c] = p.parts();
    for &x in a {
        for &y in b {
            let xy = g.adjacent(x, y);
            for &z in c {
                let (xz, yz) = (g.adjacent(x, z), g.adjacent(y, z));
                if xy && xz && yz {
                    return Ok(Some(Rainbow { kind: RainbowKind::K3, triple: [x, y, z] }));
                }
                if !xy && !xz && !yz {
                    return Ok(Some(Rainbow { kind: RainbowKind::ThreeP1, triple: [x, y, z] }));
                }
            }
        }
    }
    Ok(None)
}

/// An induced 2P2 `a1-b1, a2-b2` inside the bipartite graph between `a` and `b`.
pub fn find_2p2(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<[VertexId; 4]> {
    let av: Vec<VertexId> = a.iter().copied().collect();
    let nb: Vec<VertexSet> = av.iter().map(|&x| g.neighbours_in(x, b)).collect();
    for i in 0..av.len() {
        for j in i + 1..av.len() {
            let only_i = nb[i].difference(&nb[j]).next();
            let only_j = nb[j].difference(&nb[i]).next();
            if let (Some(&bi), Some(&bj)) = (only_i, only_j) {
                return Some([av[i], bi, av[j], bj]);
            }
        }
    }
    None
}

/// True iff `G[A ∪ B]` has an induced 2P2, for disjoint independent `A`, `B`.
pub fn pair_has_2p2(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    find_2p2(g, a, b).is_some()
}
