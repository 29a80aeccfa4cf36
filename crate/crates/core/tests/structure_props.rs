//! Properties of graphs, edits, modules, pattern search and the quasi-order
//! helpers, each checked against a direct enumeration.

use std::collections::BTreeSet;

use proptest::prelude::*;
use trifree_cw::edit::{EditLog, EditOp};
use trifree_cw::patterns::{find_induced, Pattern};
use trifree_cw::wqo::{higman_leq, Poset};
use trifree_cw::{Graph, VertexId, VertexSet};

fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2))).prop_map(
        |(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n as u32, &edges).unwrap()
        },
    )
}

/// Graph plus a choice per vertex of 0 (neither), 1 (S) or 2 (T).
fn graph_with_sides() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    graph(1, 8).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(0u8..3, n)).prop_map(|(g, side)| {
            let pick = |x: u8| g.vertices().iter().zip(&side).filter(|(_, &s)| s == x).map(|(v, _)| *v).collect();
            let (s, t) = (pick(1), pick(2));
            (g, s, t)
        })
    })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_is_symmetric_and_loop_free(g in graph(0, 9)) {
        for &a in g.vertices() {
            prop_assert!(!g.adjacent(a, a));
            for &b in g.vertices() {
                prop_assert_eq!(g.adjacent(a, b), g.adjacent(b, a));
            }
        }
    }

    #[test]
    fn complementations_undo_themselves((g, s, t) in graph_with_sides()) {
        let bip = EditOp::BipartiteComplementation { s: s.clone(), t: t.clone() };
        let once = g.apply_edit(&bip).unwrap();
        prop_assert_eq!(once.vertices(), g.vertices());
        prop_assert_eq!(once.apply_edit(&bip).unwrap(), g.clone());
        let sub = EditOp::SubgraphComplementation { s: s.clone() };
        prop_assert_eq!(g.apply_edit(&sub).unwrap().apply_edit(&sub).unwrap(), g.clone());
        // Only pairs across S and T change.
        for &a in g.vertices() {
            for &b in g.vertices() {
                let across = (s.contains(&a) && t.contains(&b)) || (s.contains(&b) && t.contains(&a));
                prop_assert_eq!(once.adjacent(a, b) != g.adjacent(a, b), across && a != b);
            }
        }
    }

    #[test]
    fn deletion_keeps_other_ids((g, s, _t) in graph_with_sides()) {
        let mut h = g.clone();
        let mut log = EditLog::new(&g);
        for &v in &s {
            let op = EditOp::VertexDeletion { vertex: v };
            h = h.apply_edit(&op).unwrap();
            log.push(op);
        }
        let left: VertexSet = g.vertex_set().difference(&s).copied().collect();
        prop_assert_eq!(h.vertex_set(), left);
        prop_assert_eq!(log.replay(&g).unwrap(), h);
    }

    #[test]
    fn log_counts_match_the_ops((g, s, t) in graph_with_sides(), kinds in prop::collection::vec(0u8..3, 0..12)) {
        let mut log = EditLog::new(&g);
        let mut want = [0usize; 3];
        for k in kinds {
            let op = match k {
                0 => EditOp::VertexDeletion { vertex: g.vertices()[0] },
                1 => EditOp::BipartiteComplementation { s: s.clone(), t: t.clone() },
                _ => EditOp::SubgraphComplementation { s: s.clone() },
            };
            want[k as usize] += 1;
            log.push(op);
        }
        let c = &log.counts;
        prop_assert_eq!([c.deletions, c.bipartite_complementations, c.subgraph_complementations], want);
        prop_assert_eq!(log.tally(), log.counts.clone());
    }

    #[test]
    fn module_search_matches_enumeration(g in graph(3, 8)) {
        let n = g.n();
        let vs = g.vertices();
        // A set is a module when every outside vertex sees all of it or none.
        let exists = subsets(n).filter(|s| s.len() > 1 && s.len() < n).any(|s| {
            (0..n).filter(|i| !s.contains(i)).all(|o| {
                let seen: BTreeSet<bool> = s.iter().map(|&i| g.adjacent(vs[o], vs[i])).collect();
                seen.len() == 1
            })
        });
        let found = g.find_nontrivial_module();
        prop_assert_eq!(found.is_some(), exists);
        if let Some(m) = found {
            prop_assert!(g.is_module(&m) && m.len() > 1 && m.len() < n);
        }
    }

    #[test]
    fn modular_decomposition_recomposes(g in graph(1, 8)) {
        let t = g.modular_decomposition();
        prop_assert_eq!(t.recompose(), g.clone());
        prop_assert_eq!(t.vertices(), g.vertex_set());
    }

    #[test]
    fn induced_search_matches_enumeration(g in graph(0, 8), which in 0usize..64) {
        let small: Vec<Pattern> = Pattern::catalog().into_iter().filter(|p| p.graph.n() <= 6).collect();
        let h = &small[which % small.len()].graph;
        let k = h.n();
        let (gv, hv) = (g.vertices(), h.vertices());
        let perms = permutations(k);
        let exists = subsets(g.n()).filter(|s| s.len() == k).any(|s| {
            perms.iter().any(|p| {
                (0..k).all(|a| (a + 1..k).all(|b| g.adjacent(gv[s[p[a]]], gv[s[p[b]]]) == h.adjacent(hv[a], hv[b])))
            })
        });
        let found = find_induced(&g, h);
        prop_assert_eq!(found.is_some(), exists);
        if let Some(img) = found {
            let distinct: BTreeSet<VertexId> = img.iter().copied().collect();
            prop_assert_eq!(distinct.len(), k);
            for a in 0..k {
                for b in a + 1..k {
                    prop_assert_eq!(g.adjacent(img[a], img[b]), h.adjacent(hv[a], hv[b]));
                }
            }
        }
    }

    #[test]
    fn posets_are_reflexive_and_transitive(n in 1usize..6, covers in prop::collection::vec((0usize..6, 0usize..6), 0..8)) {
        let covers: Vec<(usize, usize)> = covers.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let p = Poset::new((0..n).map(|i| format!("e{i}")).collect(), &covers).unwrap();
        for a in 0..n {
            prop_assert!(p.leq(a, a));
            for b in 0..n {
                for c in 0..n {
                    prop_assert!(!(p.leq(a, b) && p.leq(b, c)) || p.leq(a, c));
                }
            }
        }
        for (a, b) in covers {
            prop_assert!(p.leq(a, b));
        }
    }

    #[test]
    fn higman_greedy_matches_subsequence_search(a in prop::collection::vec(0u8..4, 0..7), b in prop::collection::vec(0u8..4, 0..8)) {
        // Divisibility on 1..=4 is a genuine partial order.
        let leq = |x: &u8, y: &u8| (y + 1) % (x + 1) == 0;
        let exhaustive = subsets(b.len())
            .filter(|s| s.len() == a.len())
            .any(|s| a.iter().zip(&s).all(|(x, &j)| leq(x, &b[j])));
        prop_assert_eq!(higman_leq(&a, &b, leq), exhaustive);
    }
}
