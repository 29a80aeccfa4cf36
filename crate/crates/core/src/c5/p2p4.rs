//! Prime (K3, P2+P4)-free graphs: at most 19 curious pieces and one 3-uniform
//! piece, at most 2570 deletions and 459 bipartite complementations.
//!
//! Stage order: the piece around `U` is cut off first (its structure is read
//! from the prime input before any edit), then the `W*` pairs, then the
//! undominated `V_i` vertices and the cycle are deleted, and what remains is
//! cut into pieces of the first and second kind and a final ring.

use super::engine::{biclique_components, require_independent, require_trivial, require_uniform, union, Run};
use super::p1p5::split_v;
use super::{m5, partition_around_c5, try_cycles, Budget, DecompositionReport};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::patterns::{first_witness, Pattern};
use crate::uniform::recognize_3uniform_special;

/// Largest independent module size that the argument allows.
pub const MODULE_BOUND: usize = 512;

pub fn decompose_p2p4(g: &Graph) -> Result<DecompositionReport> {
    if let Some(w) = first_witness(g, &[Pattern::k3(), Pattern::p2_p4()]) {
        return Err(Error::NotMember(w));
    }
    if let Some(m) = g.find_nontrivial_module() {
        return Err(Error::Precondition(format!("graph is not prime: {:?} is a module", m)));
    }
    try_cycles(g, run)
}

fn at(s: &[VertexSet; 5], i: isize) -> &VertexSet {
    &s[m5(i)]
}

fn with_neighbours_in(g: &Graph, from: &VertexSet, to: &VertexSet) -> VertexSet {
    from.iter().copied().filter(|&x| !g.neighbours_in(x, to).is_empty()).collect()
}

/// Cells of the final stage: `V^0, V^-, V^+, W^0, W^2, W^3`, five of each.
#[derive(Clone, Copy)]
enum Cell {
    V0 = 0,
    VMinus = 1,
    VPlus = 2,
    W0 = 3,
    W2 = 4,
    W3 = 5,
}

fn cell(c: Cell, i: isize) -> usize {
    c as usize * 5 + m5(i)
}

fn run(g: &Graph, cycle: [VertexId; 5]) -> Result<DecompositionReport> {
    let ctx = partition_around_c5(g, cycle)?;
    let (u, w, v) = (ctx.u.clone(), ctx.w.clone(), ctx.v.clone());

    for i in 0..5isize {
        require_independent(g, "U ∪ W_i independent", &union([&u, at(&w, i)]))?;
        require_independent(g, "V_{i-1} ∪ W_i ∪ V_{i+1} independent", &union([at(&v, i - 1), at(&w, i), at(&v, i + 1)]))?;
        biclique_components(g, "G[U ∪ V_i] P4-free", at(&v, i), &u)?;
        require_trivial(g, "V_i versus W_i", at(&v, i), at(&w, i))?;
    }
    let vstar: [VertexSet; 5] = std::array::from_fn(|i| with_neighbours_in(g, &v[i], &u));
    let v0: [VertexSet; 5] = std::array::from_fn(|i| v[i].difference(&vstar[i]).copied().collect());
    let all_star = union(&vstar);
    for &x in &u {
        if let Some(&y) = g.neighbours(x).difference(&all_star).next() {
            return Err(Error::claim("U sees only V*", format!("edge {x}-{y}"), vec![x, y]));
        }
    }
    let inner = union([&u, &all_star]);
    for i in 0..5isize {
        let mut expected = union([at(&v0, i - 1), at(&v0, i + 1), at(&w, i - 2), at(&w, i + 2)]);
        expected.insert(cycle[m5(i - 1)]);
        expected.insert(cycle[m5(i + 1)]);
        for &x in at(&vstar, i) {
            let actual: VertexSet = g.neighbours(x).difference(&inner).copied().collect();
            if let Some(&y) = actual.symmetric_difference(&expected).next() {
                return Err(Error::claim("V_i^* neighbourhood outside U ∪ V*", format!("{x} and {y}"), vec![x, y]));
            }
        }
        let star: Vec<VertexId> = at(&vstar, i).iter().copied().collect();
        for (k, &x) in star.iter().enumerate() {
            for &y in &star[k + 1..] {
                if !g.neighbours_in(x, &u).is_disjoint(&g.neighbours_in(y, &u)) {
                    return Err(Error::claim("one V_i^* vertex per component of G[U ∪ V_i^*]", "shared U-neighbour", vec![x, y]));
                }
            }
            if star.len() > 1 && g.neighbours_in(x, &u).len() != 1 {
                return Err(Error::claim("one U-neighbour when |V_i^*| > 1", format!("{x}"), vec![x]));
            }
        }
        if at(&vstar, i).len() > 1 && at(&vstar, i + 2).len() > 1 {
            return Err(Error::claim("large V_i^* sets are consecutive", format!("V{} and V{}", m5(i) + 1, m5(i + 2) + 1), vec![]));
        }
        require_uniform(g, "W_i versus W_{i-1} ∪ W_{i+1}", at(&w, i), &union([at(&w, i - 1), at(&w, i + 1)]))?;
    }
    let mut wplus: [VertexSet; 5] = Default::default();
    let mut wminus: [VertexSet; 5] = Default::default();
    let mut pairs = Vec::new();
    for i in 0..5isize {
        let comps = biclique_components(g, "G[W_i ∪ W_{i+2}] P4-free", at(&w, i), at(&w, i + 2))?;
        if comps.len() >= 2 {
            wplus[m5(i)] = with_neighbours_in(g, at(&w, i), at(&w, i + 2));
            wminus[m5(i + 2)] = with_neighbours_in(g, at(&w, i + 2), at(&w, i));
            pairs.push(i);
        }
    }
    if pairs.len() > 2 {
        return Err(Error::claim("at most two non-simple W pairs", format!("{} pairs", pairs.len()), vec![]));
    }
    for i in 0..5 {
        if let Some(&x) = wplus[i].intersection(&wminus[i]).next() {
            return Err(Error::claim("W_i^+ and W_i^- disjoint", format!("{x}"), vec![x]));
        }
    }
    let wstar = union(wplus.iter().chain(&wminus));

    let mut r = Run::new(g, ctx);
    r.stage("separate U ∪ V*");
    let mut parts: Vec<&VertexSet> = vstar.iter().collect();
    parts.push(&u);
    r.detach_parts("separate U ∪ V*", &parts)?;

    r.stage("delete singleton V_i^* sets");
    let small: VertexSet = union(vstar.iter().filter(|s| s.len() == 1));
    for &x in &small {
        r.delete(x)?;
    }
    let piece: VertexSet = union([&u, &all_star]).difference(&small).copied().collect();
    let large: Vec<usize> = (0..5).filter(|&i| vstar[i].len() > 1).collect();
    match large.as_slice() {
        [] | [_] => r.bipartite("U ∪ V* piece", &piece)?,
        &[a, b] => {
            let i = if b == a + 1 { a } else if (a, b) == (0, 4) { 4 } else {
                return Err(Error::claim("large V_i^* sets are consecutive", format!("V{} and V{}", a + 1, b + 1), vec![]));
            };
            let h = r.work.induced_subgraph(&piece)?;
            let rec = recognize_3uniform_special(&h, &vstar[i], &vstar[(i + 1) % 5], &u)
                .ok_or_else(|| Error::claim("U ∪ V* piece is 3-uniform", "recognition failed", piece.iter().copied().collect()))?;
            r.three_uniform("U ∪ V* piece", &piece, rec)?;
        }
        _ => return Err(Error::claim("large V_i^* sets are consecutive", format!("{} large sets", large.len()), vec![])),
    }

    for &i in &pairs {
        let name = format!("separate W{}^+ ∪ W{}^-", m5(i) + 1, m5(i + 2) + 1);
        r.stage(&name);
        r.detach_parts(&name, &[at(&wplus, i), at(&wminus, i + 2)])?;
        r.bipartite(&name, &union([at(&wplus, i), at(&wminus, i + 2)]))?;
    }

    let mut vv = v0;
    let ww: [VertexSet; 5] = std::array::from_fn(|i| w[i].difference(&wstar).copied().collect());
    r.stage("delete undominated V_i vertices");
    for i in 0..5isize {
        let work = &r.work;
        let mut best: Option<(VertexId, VertexId, VertexSet)> = None;
        for &x in at(&vv, i - 1) {
            for &y in at(&vv, i + 1) {
                let a: VertexSet = at(&vv, i).iter().copied().filter(|&z| !work.adjacent(x, z) && !work.adjacent(y, z)).collect();
                if best.as_ref().map_or(true, |b| a.len() > b.2.len()) {
                    best = Some((x, y, a));
                }
            }
        }
        let Some((x, y, a)) = best else { continue };
        if a.is_empty() {
            continue;
        }
        let rest: VertexSet = at(&vv, i).difference(&a).copied().collect();
        for z in [x, y] {
            if work.neighbours_in(z, at(&vv, i)) != rest {
                return Err(Error::claim("A^{x,y} is the common non-neighbourhood", format!("{z}"), vec![x, y, z]));
            }
        }
        if a.len() > MODULE_BOUND {
            return Err(Error::claim("independent modules have at most 512 vertices", format!("|A| = {}", a.len()), vec![]));
        }
        for &z in &a {
            r.delete(z)?;
        }
        vv[m5(i)] = rest;
    }
    let sides = split_v(&r.work, &vv, "V domination after deletions")?;
    let mut w0: [VertexSet; 5] = Default::default();
    let mut w2: [VertexSet; 5] = Default::default();
    let mut w3: [VertexSet; 5] = Default::default();
    for i in 0..5isize {
        let two = union([at(&sides.zero, i + 2), at(&sides.plus, i + 2)]);
        let three = union([at(&sides.zero, i + 3), at(&sides.minus, i + 3)]);
        for &x in at(&ww, i) {
            let k = m5(i);
            match (!r.work.neighbours_in(x, &two).is_empty(), !r.work.neighbours_in(x, &three).is_empty()) {
                (true, true) => return Err(Error::claim("W_i split", format!("{x} sees both sides"), vec![x])),
                (true, false) => w2[k].insert(x),
                (false, true) => w3[k].insert(x),
                (false, false) => w0[k].insert(x),
            };
        }
    }

    r.stage("delete the cycle");
    for x in cycle {
        r.delete(x)?;
    }

    let mut cells: Vec<VertexSet> = Vec::with_capacity(30);
    for s in [&sides.zero, &sides.minus, &sides.plus, &w0, &w2, &w3] {
        cells.extend(s.iter().cloned());
    }
    let mut used = [false; 30];
    let mut claim_cells = |piece: &[usize]| -> Result<()> {
        for &c in piece {
            if std::mem::replace(&mut used[c], true) {
                return Err(Error::claim("pieces are disjoint", format!("cell {c} used twice"), vec![]));
            }
        }
        Ok(())
    };
    let first_kind: [bool; 5] = std::array::from_fn(|i| !w3[i].is_empty() && !w2[(i + 1) % 5].is_empty());
    for i in 0..5isize {
        if !first_kind[m5(i)] {
            continue;
        }
        let name = format!("separate first-kind piece {}", m5(i) + 1);
        let piece = [cell(Cell::W3, i), cell(Cell::W2, i + 1), cell(Cell::V0, i + 3)];
        claim_cells(&piece)?;
        r.stage(&name);
        r.detach_cells(&name, &cells, &piece)?;
        r.bipartite(&name, &union(piece.iter().map(|&c| &cells[c])))?;
    }
    for i in 0..5isize {
        let with_w3 = !first_kind[m5(i - 1)] && !at(&w3, i - 1).is_empty();
        let with_w2 = !first_kind[m5(i)] && !at(&w2, i + 1).is_empty();
        let mut piece = vec![cell(Cell::W0, i), cell(Cell::VMinus, i + 2), cell(Cell::VPlus, i + 3)];
        if with_w3 {
            piece.extend([cell(Cell::W3, i - 1), cell(Cell::V0, i + 2)]);
        }
        if with_w2 {
            piece.extend([cell(Cell::W2, i + 1), cell(Cell::V0, i + 3)]);
        }
        claim_cells(&piece)?;
        let name = format!("separate second-kind piece {}", m5(i) + 1);
        r.stage(&name);
        r.detach_cells(&name, &cells, &piece)?;

        let pick = |yes: bool, c: usize| if yes { cells[c].clone() } else { VertexSet::new() };
        let a3 = pick(with_w3, cell(Cell::W3, i - 1));
        let a2 = pick(with_w2, cell(Cell::W2, i + 1));
        let z2 = pick(with_w3, cell(Cell::V0, i + 2));
        let z3 = pick(with_w2, cell(Cell::V0, i + 3));
        let zero = &cells[cell(Cell::W0, i)];
        let x_side = union([&a3, &z3, &cells[cell(Cell::VPlus, i + 3)]]);
        let y_side = union([&a2, &z2, &cells[cell(Cell::VMinus, i + 2)]]);
        let tails = union([&a3, &a2]);
        let split = format!("split second-kind piece {}", m5(i) + 1);
        if r.work.is_complete(zero, &tails) {
            r.curious(&name, [x_side, y_side, zero.clone()])?;
        } else if r.work.is_anticomplete(zero, &tails) {
            let comps = biclique_components(&r.work, &split, &a3, &a2)?;
            if comps.len() > 1 {
                return Err(Error::claim(&split, "W^3_{i-1} and W^2_{i+1} are not simple", vec![]));
            }
            let (s3, s2) = comps.into_iter().next().unwrap_or_default();
            r.stage(&split);
            r.detach_parts(&split, &[&s3, &s2])?;
            r.bipartite(&split, &union([&s3, &s2]))?;
            let z = union([zero, &a3.difference(&s3).copied().collect(), &a2.difference(&s2).copied().collect()]);
            let x_rest = union([&z3, &cells[cell(Cell::VPlus, i + 3)]]);
            let y_rest = union([&z2, &cells[cell(Cell::VMinus, i + 2)]]);
            r.curious(&split, [x_rest, y_rest, z])?;
        } else {
            return Err(Error::claim(&split, "W_i^0 neither complete nor anti-complete to the W tails", vec![]));
        }
    }

    r.stage("cut the V^0 ring");
    let ring: [VertexSet; 5] = std::array::from_fn(|i| if used[cell(Cell::V0, i as isize)] { VertexSet::new() } else { cells[i].clone() });
    for i in 0..5 {
        r.cut("cut the V^0 ring", &ring[i], &ring[(i + 1) % 5])?;
    }
    r.curious("cut the V^0 ring", [union(&ring), VertexSet::new(), VertexSet::new()])?;
    r.finish("K3,P2+P4", Budget::P2P4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c5::{check_report, report_problems, ComponentKind};
    use crate::uniform::UniformSpec;

    #[test]
    fn bare_cycle() {
        let g = Pattern::cycle(5).graph;
        let r = decompose_p2p4(&g).unwrap();
        assert!(r.components.is_empty());
        assert_eq!(r.edit_log.tally().deletions, 5);
        assert!(check_report(&g, &r));
    }

    /// C5 on 0..5; `a_j` on `v_1, v_3`, `b_j` on `v_2, v_4` (1-based), each
    /// pair `a_j, b_j` sharing a private `u_j`, and `a_j ~ b_k` iff `j != k`.
    fn two_large_star_sets(m: u32) -> Graph {
        let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        for j in 0..m {
            let (a, b, u) = (5 + 3 * j, 6 + 3 * j, 7 + 3 * j);
            e.extend([(a, 0), (a, 2), (b, 1), (b, 3), (a, u), (b, u)]);
            for k in 0..m {
                if k != j {
                    e.push((a, 6 + 3 * k));
                }
            }
        }
        Graph::from_edges(5 + 3 * m, &e).unwrap()
    }

    #[test]
    fn consecutive_large_star_sets_give_a_three_uniform_piece() {
        let g = two_large_star_sets(3);
        assert!(g.is_prime());
        let r = decompose_p2p4(&g).unwrap();
        assert!(check_report(&g, &r), "{:?}", report_problems(&g, &r));
        let rec = r
            .components
            .iter()
            .find_map(|c| match &c.kind {
                ComponentKind::ThreeUniform { recognition } => Some(recognition),
                _ => None,
            })
            .expect("a 3-uniform piece");
        assert_eq!(rec.spec.matrix, UniformSpec::k3_family(3).matrix);
        assert_eq!(rec.spec.matrix[0][1], 1);
        assert_eq!(rec.spec.matrix[1][0], 1);
        assert_eq!(r.three_uniform_count(), 1);
    }

    #[test]
    fn non_prime_input_is_refused() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (5, 4)]).unwrap();
        // 5 and 0 are false twins.
        assert!(matches!(decompose_p2p4(&g), Err(Error::Precondition(_))));
    }
}
