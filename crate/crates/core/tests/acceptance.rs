//! Acceptance run: one PASS/FAIL line per criterion. Criteria run in parallel
//! and are reported in order; the process fails if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use trifree_cw::c5::{decompose_p1p5, decompose_p2p4, report_problems, Budget, DecompositionReport};
use trifree_cw::curious::{compose_slices, curious_cw, curious_type, monotone_order, slice_type01, slice_type23, TriPartition};
use trifree_cw::cwx::{exact_cw_expr, CwExpr, OracleConfig};
use trifree_cw::patterns::{find_induced, pair_has_2p2, Pattern};
use trifree_cw::pipeline::{build_cw, enumerate_small, gen_class_random, gen_with_c5, random_curious, random_sliced, ClassSpec};
use trifree_cw::uniform::{realize, uniform_cw_expr, UniformSpec};
use trifree_cw::wqo::{higman_leq, labelled_embeds, LabelledGraphW, Poset};
use trifree_cw::{Graph, VertexSet};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(g: &Graph, cap: usize) -> Result<(usize, CwExpr), String> {
    match exact_cw_expr(g, g.n(), OracleConfig { max_vertices: cap }) {
        Ok(Some((k, Some(e)))) => Ok((k, e)),
        other => Err(format!("oracle gave {other:?} on {} vertices", g.n())),
    }
}

fn slice_composition() -> Outcome {
    let mut widest = 0;
    for seed in 0..200u64 {
        let n = 3 + (seed as usize % 13);
        let (g, p, d) = random_sliced(n, seed);
        let mut exprs = Vec::new();
        let mut k = 0;
        for s in d.slice_graphs(&g).map_err(|e| e.to_string())? {
            let (w, e) = oracle(&s, 12)?;
            k = k.max(w);
            exprs.push(e);
        }
        ensure(k <= 3, || format!("seed {seed}: slice width {k}"))?;
        let e = compose_slices(&exprs, &p).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(e.verify(&g), || format!("seed {seed}: composed expression does not verify"))?;
        ensure(e.width() <= (3 * k).max(6), || format!("seed {seed}: width {} > max(3*{k}, 6)", e.width()))?;
        widest = widest.max(e.width());
    }
    Ok(format!("200 sliced graphs, widest composition {widest}"))
}

fn curious_slicing() -> Outcome {
    let mut by_type = [0usize; 4];
    for seed in 0..500u64 {
        let n = 3 + (seed as usize % 10);
        let (g, p) = random_curious(n, seed);
        let t = curious_type(&g, &p).map_err(|e| format!("seed {seed}: {e}"))?;
        by_type[t] += 1;
        let d = if t <= 1 { slice_type01(&g, &p) } else { slice_type23(&g, &p) }.map_err(|e| format!("seed {seed}: {e}"))?;
        d.validate(&g, &p).map_err(|e| format!("seed {seed}: {e}"))?;
        for s in d.slices.iter().filter(|s| !s.vertices().is_empty()) {
            let gs = g.induced_subgraph(&s.vertices()).map_err(|e| e.to_string())?;
            if t <= 1 {
                ensure(gs.bipartition().is_some(), || format!("seed {seed}: type {t} slice is not bipartite"))?;
            } else {
                let ts = curious_type(&gs, s).map_err(|e| format!("seed {seed}: {e}"))?;
                ensure(ts < t, || format!("seed {seed}: type {t} slice has type {ts}"))?;
            }
        }
        let e = curious_cw(&g, &p, &mut |h: &Graph| {
            oracle(h, 12).map(|(_, e)| e).map_err(trifree_cw::Error::Expr)
        })
        .map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(e.verify(&g), || format!("seed {seed}: curious expression does not verify"))?;
    }
    ensure(by_type.iter().all(|&c| c > 0), || format!("types not all reached: {by_type:?}"))?;
    Ok(format!("500 curious graphs, types 0..3 seen {by_type:?}"))
}

/// The final graph of the log is exactly the disjoint union of the pieces.
fn replay_identity(g: &Graph, r: &DecompositionReport) -> bool {
    let Ok(h) = r.edit_log.replay(g) else { return false };
    let ids: Vec<_> = r.components.iter().flat_map(|c| c.graph.vertices().to_vec()).collect();
    let edges: Vec<_> = r.components.iter().flat_map(|c| c.graph.edges()).collect();
    Graph::new(ids, edges).is_ok_and(|u| u == h)
}

fn c5_budgets(cls: &ClassSpec, count: u64, max_n: usize, budget: Budget) -> Outcome {
    let mut worst = (0, 0, 0, 0);
    let mut sizes = BTreeSet::new();
    for seed in 0..count {
        let n = 5 + (seed as usize % (max_n - 4));
        let g = gen_with_c5(cls, n, seed).map_err(|e| e.to_string())?;
        sizes.insert(g.n());
        let r = match cls.to_string().as_str() {
            "K3,P1+P5" => decompose_p1p5(&g),
            _ => decompose_p2p4(&g),
        }
        .map_err(|e| format!("seed {seed} (n = {}): {e}", g.n()))?;
        let t = r.edit_log.tally();
        let (c, u) = (r.curious_count(), r.three_uniform_count());
        ensure(
            t.deletions <= budget.deletions
                && t.bipartite_complementations <= budget.bipartite_complementations
                && c <= budget.curious
                && u <= budget.three_uniform
                && t.subgraph_complementations == 0,
            || format!("seed {seed}: over budget {t:?}, {c} curious, {u} 3-uniform"),
        )?;
        let problems = report_problems(&g, &r);
        ensure(problems.is_empty(), || format!("seed {seed}: {problems:?}"))?;
        ensure(replay_identity(&g, &r), || format!("seed {seed}: replay identity fails"))?;
        worst = (
            worst.0.max(t.deletions),
            worst.1.max(t.bipartite_complementations),
            worst.2.max(c),
            worst.3.max(u),
        );
    }
    Ok(format!(
        "{count} graphs on {}..{} vertices, worst (deletions, complementations, curious, 3-uniform) = {worst:?}",
        sizes.first().unwrap(),
        sizes.last().unwrap()
    ))
}

fn uniform_bound() -> Outcome {
    let mut specs = 0;
    for k in 1..=3usize {
        let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let pairs: Vec<[u32; 2]> = (1..=k as u32).flat_map(|a| (a + 1..=k as u32).map(move |b| [a, b])).collect();
        for kmask in 0u32..1 << cells.len() {
            let mut matrix = vec![vec![0u8; k]; k];
            for (bit, &(i, j)) in cells.iter().enumerate() {
                let v = (kmask >> bit & 1) as u8;
                matrix[i][j] = v;
                matrix[j][i] = v;
            }
            for fmask in 0u32..1 << pairs.len() {
                let base: Vec<[u32; 2]> = pairs.iter().enumerate().filter(|(b, _)| fmask >> b & 1 == 1).map(|(_, p)| *p).collect();
                for m in 1..=4 {
                    let spec = UniformSpec { k, matrix: matrix.clone(), base: base.clone(), m };
                    let g = realize(&spec).map_err(|e| e.to_string())?;
                    let e = uniform_cw_expr(&spec).map_err(|e| e.to_string())?;
                    ensure(e.verify(&g), || format!("{spec:?}: does not verify"))?;
                    ensure(e.width() <= 2 * k, || format!("{spec:?}: width {}", e.width()))?;
                    specs += 1;
                }
            }
        }
    }
    Ok(format!("{specs} specs with k <= 3, m <= 4"))
}

fn end_to_end() -> Outcome {
    const CAP: usize = 14;
    let mut checked = 0;
    let mut widest = 0;
    let mut check = |g: &Graph, cls: &ClassSpec, what: &str| -> Result<(), String> {
        let r = build_cw(g, cls, CAP).map_err(|e| format!("{what}: {e}"))?;
        ensure(r.expr.verify(g), || format!("{what}: expression does not verify"))?;
        ensure(!r.trace.has_unbounded_leaf(), || format!("{what}: unbounded leaf"))?;
        let (k, _) = oracle(g, CAP)?;
        ensure(r.width >= k, || format!("{what}: width {} below exact {k}", r.width))?;
        checked += 1;
        widest = widest.max(r.width);
        Ok(())
    };
    let mut small = 0;
    for cls in ClassSpec::all() {
        for n in 1..=7 {
            for g in enumerate_small(n, Some(&cls)).map_err(|e| e.to_string())? {
                check(&g, &cls, &format!("{cls} graph6 {}", trifree_cw::io::to_graph6(&g)))?;
                small += 1;
            }
        }
    }
    let mut big = 0;
    for seed in 0..200u64 {
        let cls = &ClassSpec::all()[seed as usize % 2];
        let n = 8 + (seed as usize % 7);
        let p = [0.2, 0.3, 0.45][seed as usize % 3];
        let g = gen_class_random(cls, n, p, seed);
        if g.is_empty() {
            continue;
        }
        check(&g, cls, &format!("{cls} random seed {seed}"))?;
        big += 1;
    }
    // Sparse random members rarely have a C5, so the decomposition path gets
    // its own draws on top.
    let mut with_c5 = 0;
    for seed in 0..100u64 {
        let cls = &ClassSpec::all()[seed as usize % 2];
        let g = gen_with_c5(cls, 6 + (seed as usize % 9), seed).map_err(|e| e.to_string())?;
        check(&g, cls, &format!("{cls} C5 member seed {seed}"))?;
        with_c5 += 1;
    }
    Ok(format!(
        "{small} enumerated members on <= 7 vertices, {big} random members and {with_c5} members with a C5, widest {widest} ({checked} total)"
    ))
}

fn oracle_sanity() -> Outcome {
    let cases = [
        ("K2,2", common::k22(), 2),
        ("P4", Pattern::path(4).graph, 3),
        ("C5", Pattern::cycle(5).graph, 3),
        ("C7", Pattern::cycle(7).graph, 4),
    ];
    for (name, g, want) in cases {
        // Independent lower bound: no (want - 1)-expression exists.
        ensure(!common::Closure::new(&g, want as u8 - 1).reachable(), || format!("{name}: closure search finds width {}", want - 1))?;
        let (k, e) = oracle(&g, 12)?;
        ensure(k == want && e.verify(&g) && e.width() == want, || format!("{name}: oracle says {k}"))?;
    }
    Ok("K2,2 = 2, P4 = 3, C5 = 3, C7 = 4".into())
}

/// Every sequence over `0..3` of length at most `max`, shortest first.
fn sequences(max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max {
        layer = layer.iter().flat_map(|s: &Vec<usize>| (0..3).map(move |x| [s.clone(), vec![x]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn wqo_fragment() -> Outcome {
    // 0 < 1, with 2 incomparable to both.
    let p = Poset::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1)]).map_err(|e| e.to_string())?;
    let all = sequences(8);
    let index: BTreeMap<&Vec<usize>, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let down: Vec<Vec<usize>> = (0..3).map(|y| (0..3).filter(|&x| p.leq(x, y)).collect()).collect();
    let mut pairs = 0u64;
    for b in &all {
        // Everything below some subsequence of b, by exhaustive expansion.
        let mut below = vec![false; all.len()];
        for pick in 0u32..1 << b.len() {
            let sub: Vec<usize> = (0..b.len()).filter(|&i| pick >> i & 1 == 1).map(|i| b[i]).collect();
            let mut frontier = vec![vec![]];
            for &y in &sub {
                frontier = frontier.iter().flat_map(|s: &Vec<usize>| down[y].iter().map(move |&x| [s.clone(), vec![x]].concat())).collect();
            }
            for s in frontier {
                below[index[&s]] = true;
            }
        }
        for (i, a) in all.iter().enumerate() {
            let fast = higman_leq(a, b, |&x, &y| p.leq(x, y));
            ensure(fast == below[i], || format!("higman_leq({a:?}, {b:?}) = {fast}"))?;
            pairs += 1;
        }
    }
    let trivial = Poset::trivial();
    let small: Vec<Graph> = (1..=6).flat_map(|n| enumerate_small(n, None).unwrap()).collect();
    let hosts: Vec<Graph> = (1..=8).flat_map(|n| enumerate_small(n, None).unwrap()).collect();
    let mut graph_pairs = 0u64;
    for h in &small {
        let lh = LabelledGraphW::uniform(h.clone());
        for g in hosts.iter().filter(|g| g.n() >= h.n()) {
            let lg = LabelledGraphW::uniform(g.clone());
            let a = labelled_embeds(&lh, &lg, &trivial).map_err(|e| e.to_string())?;
            let b = find_induced(g, h).is_some();
            ensure(a == b, || format!("embedding disagreement on {} into {}", trifree_cw::io::to_graph6(h), trifree_cw::io::to_graph6(g)))?;
            graph_pairs += 1;
        }
    }
    Ok(format!("{pairs} sequence pairs, {graph_pairs} graph pairs"))
}

fn monotone_orderings() -> Outcome {
    let mut chains = 0;
    let mut total = 0;
    for n in 1..=8 {
        for g in enumerate_small(n, None).map_err(|e| e.to_string())? {
            let Some((a, b)) = g.bipartition() else { continue };
            total += 1;
            let p = TriPartition::new(a.clone(), b.clone(), VertexSet::new());
            let has = pair_has_2p2(&g, &a, &b);
            // Chain graph test by pairwise comparability of neighbourhoods.
            let nbhds: Vec<VertexSet> = a.iter().map(|&x| g.neighbours_in(x, &b)).collect();
            let chain = nbhds.iter().all(|s| nbhds.iter().all(|t| s.is_subset(t) || t.is_subset(s)));
            let g6 = trifree_cw::io::to_graph6(&g);
            ensure(chain == !has, || format!("{g6}: 2P2 = {has} but chain = {chain}"))?;
            match monotone_order(&g, &p) {
                Ok(order) => {
                    ensure(!has, || format!("{g6}: ordered despite a 2P2"))?;
                    ensure(order.iter().copied().collect::<VertexSet>() == a && order.len() == a.len(), || format!("{g6}: order is not a permutation of V1"))?;
                    let ok = order.windows(2).all(|w| g.neighbours_in(w[1], &b).is_subset(&g.neighbours_in(w[0], &b)));
                    ensure(ok, || format!("{g6}: order is not monotone"))?;
                    chains += 1;
                }
                Err(_) => ensure(has, || format!("{g6}: no order despite being 2P2-free"))?,
            }
        }
    }
    Ok(format!("{total} bipartite graphs on <= 8 vertices, {chains} with a monotone order"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("slice composition within max(3k, 6)", slice_composition),
        ("curious slicing and expressions", curious_slicing),
        ("P1+P5 decomposition budgets", || c5_budgets(&ClassSpec::p1p5(), 300, 16, Budget::P1P5)),
        ("P2+P4 decomposition budgets", || c5_budgets(&ClassSpec::p2p4(), 200, 14, Budget::P2P4)),
        ("k-uniform expressions within 2k", uniform_bound),
        ("end-to-end expressions", end_to_end),
        ("oracle regression constants", oracle_sanity),
        ("Higman order and labelled embeddings", wqo_fragment),
        ("monotone orderings of bipartite graphs", monotone_orderings),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
