//! Canonical forms of small graphs and isomorphism-free enumeration.
//!
//! The canonical form is the smallest upper-triangle bit string over all
//! orderings reached by colour refinement plus individualization. Cells made of
//! mutual twins are not branched on, since any order inside them gives the same
//! string.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patterns::is_free;

use super::ClassSpec;

/// Largest `n` accepted by [`enumerate_small`].
pub const ENUMERATION_CAP: usize = 9;

type Adj = Vec<u32>;

fn adjacency(g: &Graph) -> Adj {
    let vs = g.vertices();
    vs.iter()
        .map(|&a| vs.iter().enumerate().filter(|(_, &b)| g.adjacent(a, b)).fold(0u32, |m, (j, _)| m | 1 << j))
        .collect()
}

/// Stable colouring by iterated neighbour-colour counts. Colours are ranks of
/// sorted signatures, so the result does not depend on vertex names.
fn refine(adj: &Adj, mut colour: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    loop {
        let k = colour.iter().max().map_or(0, |m| m + 1);
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut cnt = vec![0; k];
                (0..n).filter(|&u| adj[v] >> u & 1 == 1).for_each(|u| cnt[colour[u]] += 1);
                (colour[v], cnt)
            })
            .collect();
        let ranks: Vec<&(usize, Vec<usize>)> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranks.binary_search(&s).expect("present")).collect();
        if ranks.len() == k {
            return next;
        }
        colour = next;
    }
}

fn twins(adj: &Adj, cell: &[usize]) -> bool {
    cell.iter().all(|&a| {
        cell.iter().all(|&b| a == b || (adj[a] & !(1 << b)) == (adj[b] & !(1 << a)))
    })
}

fn code(adj: &Adj, order: &[usize]) -> u64 {
    let mut c = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            c = c << 1 | u64::from(adj[order[i]] >> order[j] & 1);
        }
    }
    c
}

fn search(adj: &Adj, colour: Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
    let colour = refine(adj, colour);
    let n = adj.len();
    let k = colour.iter().max().map_or(0, |m| m + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); k];
    (0..n).for_each(|v| cells[colour[v]].push(v));
    let Some(cell) = cells.iter().find(|c| c.len() > 1) else {
        let mut order = vec![0; n];
        (0..n).for_each(|v| order[colour[v]] = v);
        let c = code(adj, &order);
        if best.as_ref().map_or(true, |(b, _)| c < *b) {
            *best = Some((c, order));
        }
        return;
    };
    let branch: &[usize] = if twins(adj, cell) { &cell[..1] } else { cell };
    let c0 = colour[cell[0]];
    for &v in branch {
        // Split off `v` ahead of the rest of its cell.
        let next: Vec<usize> = (0..n).map(|u| 2 * colour[u] + usize::from(colour[u] > c0 || (colour[u] == c0 && u != v))).collect();
        search(adj, next, best);
    }
}

/// Canonical relabelling of `g` onto `0..n`; isomorphic graphs give equal
/// results. At most 11 vertices.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n > 11 {
        return Err(Error::Precondition(format!("canonical form supports at most 11 vertices, got {n}")));
    }
    let adj = adjacency(g);
    let mut best = None;
    search(&adj, vec![0; n], &mut best);
    let order = best.map(|(_, o)| o).unwrap_or_default();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adj[order[i]] >> order[j] & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::from_edges(n as u32, &edges)
}

/// All graphs on `n` vertices up to isomorphism, in canonical form, optionally
/// restricted to a class. Built by one-vertex extension of the `n - 1` list;
/// for a class only members are extended, which is enough because the class
/// is closed under induced subgraphs.
pub fn enumerate_small(n: usize, cls: Option<&ClassSpec>) -> Result<Vec<Graph>> {
    if n > ENUMERATION_CAP {
        return Err(Error::Precondition(format!("enumeration is capped at {ENUMERATION_CAP} vertices, got {n}")));
    }
    let keep = |g: &Graph| cls.map_or(true, |c| is_free(g, &c.forbidden));
    let mut level = vec![Graph::from_edges(0, &[])?];
    for m in 0..n as u32 {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let base = g.edges();
            for mask in 0u32..1 << m {
                let mut edges: Vec<(u32, u32)> = base.iter().map(|&(a, b)| (a.0, b.0)).collect();
                edges.extend((0..m).filter(|&j| mask >> j & 1 == 1).map(|j| (j, m)));
                let h = canonical_form(&Graph::from_edges(m + 1, &edges)?)?;
                let key = code(&adjacency(&h), &(0..h.n()).collect::<Vec<_>>());
                if seen.insert(key) && keep(&h) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::Pattern;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_small(n, None).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn triangle_free_on_four_vertices() {
        let tf = ClassSpec { name: super::super::ClassName::P2P4, forbidden: vec![Pattern::k3()] };
        // Of the 11 graphs on four vertices, K3+P1, the paw, the diamond and K4
        // contain a triangle.
        assert_eq!(enumerate_small(4, Some(&tf)).unwrap().len(), 7);
    }

    #[test]
    fn relabelled_graphs_share_a_form() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let h = Graph::from_edges(5, &[(3, 0), (0, 4), (4, 1), (1, 2)]).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_ne!(canonical_form(&g).unwrap(), canonical_form(&Pattern::cycle(5).graph).unwrap());
    }

    #[test]
    fn above_the_cap() {
        assert!(enumerate_small(ENUMERATION_CAP + 1, None).is_err());
    }
}
