//! Exact clique-width for small graphs.
//!
//! Any k-expression can be rewritten so that every subexpression evaluates to
//! the induced subgraph on its vertex set (joins are pushed down to the union
//! that first separates their endpoints). A subexpression is then described by
//! its vertex set `S` and the partition of `S` into label classes, where each
//! class must consist of twins with respect to the vertices outside `S`.
//! The search computes, for every `S`, the finest partitions into at most `k`
//! classes that some expression reaches; coarser ones are always reachable by
//! relabelling and never help.

use std::collections::{BTreeMap, HashMap};

use super::{substitute, CwExpr, Label};
use crate::modules::{MdKind, MdTree};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ORACLE_CAP: usize = 12;
pub const MAX_ORACLE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vertices: DEFAULT_ORACLE_CAP }
    }
}

/// Minimum `k <= k_max` with a k-expression for `g`, under the default cap.
pub fn exact_cw(g: &Graph, k_max: usize) -> Result<Option<usize>> {
    Ok(exact_cw_expr(g, k_max, OracleConfig::default())?.map(|(k, _)| k))
}

/// Like [`exact_cw`], also returning a witnessing expression (absent for the
/// empty graph, whose clique-width is 0).
pub fn exact_cw_expr(g: &Graph, k_max: usize, cfg: OracleConfig) -> Result<Option<(usize, Option<CwExpr>)>> {
    let cap = cfg.max_vertices.min(MAX_ORACLE_CAP);
    let n = g.n();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if n == 0 {
        return Ok(Some((0, None)));
    }
    let Some((k, e)) = via_modules(&g.modular_decomposition(), k_max)? else { return Ok(None) };
    debug_assert!(e.verify(g) && e.width() <= k);
    if !e.verify(g) {
        return Err(Error::Expr("oracle produced an expression that does not verify".into()));
    }
    Ok(Some((k, Some(e))))
}

/// Clique-width is the maximum over the quotient graphs of the modular
/// decomposition; series quotients need two labels and parallel ones one.
fn via_modules(t: &MdTree, k_max: usize) -> Result<Option<(usize, CwExpr)>> {
    let MdTree::Internal { kind, quotient, children } = t else {
        let v = t.representative();
        return Ok((k_max >= 1).then(|| (1, CwExpr::v(1, v))));
    };
    let mut width = 0;
    let mut parts = BTreeMap::new();
    for c in children {
        let Some((k, e)) = via_modules(c, k_max)? else { return Ok(None) };
        width = width.max(k);
        parts.insert(c.representative(), e);
    }
    let q = match kind {
        MdKind::Parallel => Some((1, CwExpr::union_all(quotient.vertices().iter().map(|&v| CwExpr::v(1, v))))),
        MdKind::Series => {
            let mut it = quotient.vertices().iter();
            let first = CwExpr::v(1, *it.next().expect("nonempty"));
            Some((2, Some(it.fold(first, |e, &v| CwExpr::union(e, CwExpr::v(2, v)).join(1, 2).relabel(2, 1)))))
        }
        MdKind::Prime => prime_search(quotient, k_max),
    };
    let Some((kq, Some(qe))) = q else { return Ok(None) };
    if kq > k_max {
        return Ok(None);
    }
    Ok(Some((width.max(kq), substitute(&qe, &parts)?)))
}

fn prime_search(g: &Graph, k_max: usize) -> Option<(usize, Option<CwExpr>)> {
    let lo = if g.edge_count() == 0 { 1 } else { 2 };
    for k in lo..=k_max.min(g.n()) {
        let mut s = Search::new(g, k);
        if s.run().is_some() {
            let full = s.full;
            let labels: Vec<Label> = (1..=s.states[full as usize][0].classes.len() as Label).collect();
            return Some((k, Some(s.build(full, 0, &labels))));
        }
    }
    None
}

struct State {
    classes: Vec<u32>,
    back: Option<(u32, usize, u32, usize)>,
}

struct Search<'g> {
    g: &'g Graph,
    k: usize,
    adj: Vec<u32>,
    full: u32,
    states: Vec<Vec<State>>,
}

#[derive(Clone, Copy)]
struct Class {
    side: [u32; 2],
    sig: u32,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        let n = g.n();
        let adj = (0..n).map(|a| g.row(a).iter().fold(0u32, |m, b| m | 1 << b)).collect();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        Search { g, k, adj, full, states: (0..=full).map(|_| Vec::new()).collect() }
    }

    fn outside_classes(&self, s: u32) -> usize {
        let mut sigs: Vec<u32> = bits(s).map(|v| self.adj[v] & !s).collect();
        sigs.sort_unstable();
        sigs.dedup();
        sigs.len()
    }

    fn complete(&self, x: u32, y: u32) -> bool {
        bits(x).all(|v| self.adj[v] & y == y)
    }

    fn any_edge(&self, x: u32, y: u32) -> bool {
        bits(x).any(|v| self.adj[v] & y != 0)
    }

    /// Whether classes `c` and `d` of a union can be finished with either no
    /// join or a single join between their labels.
    fn pair_ok(&self, c: &Class, d: &Class) -> bool {
        if !self.any_edge(c.side[0], d.side[1]) && !self.any_edge(d.side[0], c.side[1]) {
            return true;
        }
        self.complete(c.side[0], d.side[1])
            && self.complete(d.side[0], c.side[1])
            && self.complete(c.side[0], d.side[0])
            && self.complete(c.side[1], d.side[1])
    }

    fn run(&mut self) -> Option<usize> {
        let n = self.g.n();
        for v in 0..n {
            self.states[1 << v].push(State { classes: vec![1 << v], back: None });
        }
        let mut masks: Vec<u32> = (1..=self.full).filter(|m| m.count_ones() >= 2).collect();
        masks.sort_by_key(|m| m.count_ones());
        for s in masks {
            if self.outside_classes(s) > self.k {
                continue;
            }
            self.expand(s);
        }
        let top = &self.states[self.full as usize];
        (!top.is_empty()).then_some(0)
    }

    fn expand(&mut self, s: u32) {
        let low = s & s.wrapping_neg();
        let mut found: HashMap<Vec<u32>, (u32, usize, u32, usize)> = HashMap::new();
        let mut order: Vec<Vec<u32>> = Vec::new();
        let rest = s ^ low;
        // Submasks of `rest`, each extended by `low`, give every split once.
        let mut sub = rest;
        loop {
            let s1 = sub | low;
            let s2 = s ^ s1;
            if s2 != 0 && !self.states[s1 as usize].is_empty() && !self.states[s2 as usize].is_empty() {
                for i1 in 0..self.states[s1 as usize].len() {
                    for i2 in 0..self.states[s2 as usize].len() {
                        let mut out = Vec::new();
                        self.merges(s, &self.states[s1 as usize][i1].classes, &self.states[s2 as usize][i2].classes, &mut out);
                        for p in out {
                            if !found.contains_key(&p) {
                                found.insert(p.clone(), (s1, i1, s2, i2));
                                order.push(p);
                            }
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        let minimal: Vec<&Vec<u32>> =
            order.iter().filter(|p| !order.iter().any(|q| q != *p && refines(q, p))).collect();
        self.states[s as usize] =
            minimal.into_iter().map(|p| State { classes: p.clone(), back: Some(found[p]) }).collect();
    }

    /// All partitions of `s` into at most `k` classes obtained by grouping the
    /// blocks of `p1` (one side) and `p2` (other side) validly.
    fn merges(&self, s: u32, p1: &[u32], p2: &[u32], out: &mut Vec<Vec<u32>>) {
        let blocks: Vec<(u32, usize)> = p1.iter().map(|&b| (b, 0)).chain(p2.iter().map(|&b| (b, 1))).collect();
        let mut classes: Vec<Class> = Vec::new();
        self.assign(s, &blocks, 0, &mut classes, out);
    }

    fn assign(&self, s: u32, blocks: &[(u32, usize)], t: usize, classes: &mut Vec<Class>, out: &mut Vec<Vec<u32>>) {
        if t == blocks.len() {
            let mut p: Vec<u32> = classes.iter().map(|c| c.side[0] | c.side[1]).collect();
            p.sort_unstable_by_key(|m| m.trailing_zeros());
            out.push(p);
            return;
        }
        let (mask, side) = blocks[t];
        let rep = mask.trailing_zeros() as usize;
        let sig = self.adj[rep] & !s;
        for ci in 0..classes.len() {
            let c = classes[ci];
            if c.sig != sig || self.any_edge(mask, c.side[1 - side]) {
                continue;
            }
            let mut grown = c;
            grown.side[side] |= mask;
            if classes.iter().enumerate().all(|(di, d)| di == ci || self.pair_ok(&grown, d)) {
                classes[ci] = grown;
                self.assign(s, blocks, t + 1, classes, out);
                classes[ci] = c;
            }
        }
        if classes.len() < self.k {
            let mut fresh = Class { side: [0, 0], sig };
            fresh.side[side] = mask;
            if classes.iter().all(|d| self.pair_ok(&fresh, d)) {
                classes.push(fresh);
                self.assign(s, blocks, t + 1, classes, out);
                classes.pop();
            }
        }
    }

    /// Expression for `G[s]` whose final labels put class `i` of state `idx`
    /// on `labels[i]`. Labels may repeat; every label used lies in `1..=k`.
    fn build(&self, s: u32, idx: usize, labels: &[Label]) -> CwExpr {
        let st = &self.states[s as usize][idx];
        let Some((s1, i1, s2, i2)) = st.back else {
            return CwExpr::v(labels[0], self.g.id_at(s.trailing_zeros() as usize));
        };
        let classes = &st.classes;
        // Injective labelling of the classes: the first class with a given
        // target keeps it, the others borrow labels outside the target image.
        let image: Vec<Label> = labels.to_vec();
        let mut spare = (1..=self.k as Label).filter(|l| !image.contains(l));
        let mut inj: Vec<Label> = Vec::with_capacity(classes.len());
        for (i, &t) in labels.iter().enumerate() {
            if labels[..i].contains(&t) {
                inj.push(spare.next().expect("at most k classes"));
            } else {
                inj.push(t);
            }
        }
        let class_of = |b: u32| classes.iter().position(|&c| c & b == b).expect("blocks lie inside classes");
        let child = |sub: u32, i: usize| {
            let blocks = &self.states[sub as usize][i].classes;
            let l: Vec<Label> = blocks.iter().map(|&b| inj[class_of(b)]).collect();
            self.build(sub, i, &l)
        };
        let mut e = CwExpr::union(child(s1, i1), child(s2, i2));
        for a in 0..classes.len() {
            for b in a + 1..classes.len() {
                let (ca, cb) = (classes[a], classes[b]);
                let cross = self.any_edge(ca & s1, cb & s2) || self.any_edge(cb & s1, ca & s2);
                if cross {
                    e = e.join(inj[a], inj[b]);
                }
            }
        }
        for (i, &t) in labels.iter().enumerate() {
            if inj[i] != t {
                e = e.relabel(inj[i], t);
            }
        }
        e
    }
}

/// True if every block of `q` lies inside a block of `p`.
fn refines(q: &[u32], p: &[u32]) -> bool {
    q.iter().all(|&b| p.iter().any(|&a| b & !a == 0))
}

fn bits(m: u32) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let t = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::Pattern;

    fn cw(g: &Graph) -> usize {
        exact_cw(g, 8).unwrap().unwrap()
    }

    #[test]
    fn small_constants() {
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(cw(&k22), 2);
        assert_eq!(cw(&Pattern::path(4).graph), 3);
        assert_eq!(cw(&Pattern::cycle(5).graph), 3);
        assert_eq!(cw(&Pattern::cycle(7).graph), 4);
        assert_eq!(cw(&Graph::from_edges(3, &[]).unwrap()), 1);
        assert_eq!(cw(&Pattern::complete(5).graph), 2);
        assert_eq!(exact_cw(&Graph::empty(), 3).unwrap(), Some(0));
    }

    #[test]
    fn cap_and_k_max() {
        let big = Pattern::path(13).graph;
        assert!(matches!(exact_cw(&big, 5), Err(Error::OracleCap { .. })));
        assert_eq!(exact_cw(&Pattern::path(4).graph, 2).unwrap(), None);
    }

    #[test]
    fn expression_is_returned_and_verifies() {
        let g = Pattern::cycle(6).graph;
        let (k, e) = exact_cw_expr(&g, 6, OracleConfig::default()).unwrap().unwrap();
        let e = e.unwrap();
        assert!(e.verify(&g));
        assert_eq!(e.width(), k);
    }
}
