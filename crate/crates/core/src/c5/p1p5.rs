//! (K3, P1+P5)-free graphs: eleven curious pieces, five deletions and at
//! most 31 bipartite complementations.

use super::engine::{require_independent, require_trivial, union, Run};
use super::{m5, partition_around_c5, try_cycles, Budget, DecompositionReport};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::patterns::{first_witness, Pattern};

pub fn decompose_p1p5(g: &Graph) -> Result<DecompositionReport> {
    if let Some(w) = first_witness(g, &[Pattern::k3(), Pattern::p1_p5()]) {
        return Err(Error::NotMember(w));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    try_cycles(g, run)
}

pub(super) struct Sides {
    pub zero: [VertexSet; 5],
    pub minus: [VertexSet; 5],
    pub plus: [VertexSet; 5],
}

/// `V_i^0` dominates both neighbouring `V` sets, `V_i^-` only `V_{i-1}`,
/// `V_i^+` only `V_{i+1}`.
pub(super) fn split_v(g: &Graph, v: &[VertexSet; 5], step: &str) -> Result<Sides> {
    let mut s = Sides { zero: Default::default(), minus: Default::default(), plus: Default::default() };
    for i in 0..5 {
        let (prev, next) = (&v[m5(i as isize - 1)], &v[(i + 1) % 5]);
        for &x in &v[i] {
            let xs: VertexSet = [x].into();
            match (g.is_complete(&xs, prev), g.is_complete(&xs, next)) {
                (true, true) => s.zero[i].insert(x),
                (true, false) => s.minus[i].insert(x),
                (false, true) => s.plus[i].insert(x),
                (false, false) => {
                    let a = *prev.iter().find(|&&y| !g.adjacent(x, y)).expect("not complete");
                    let b = *next.iter().find(|&&y| !g.adjacent(x, y)).expect("not complete");
                    return Err(Error::claim(step, format!("{x} dominates neither neighbouring V set"), vec![x, a, b]));
                }
            };
        }
    }
    Ok(s)
}

fn run(g: &Graph, cycle: [VertexId; 5]) -> Result<DecompositionReport> {
    let ctx = partition_around_c5(g, cycle)?;
    let (u, w, v) = (ctx.u.clone(), ctx.w.clone(), ctx.v.clone());
    let at = |s: &[VertexSet; 5], i: isize| s[m5(i)].clone();

    require_independent(g, "U independent", &u)?;
    for i in 0..5isize {
        require_independent(g, "V_{i-1} ∪ W_i ∪ V_{i+1} independent", &union([&at(&v, i - 1), &at(&w, i), &at(&v, i + 1)]))?;
        let near = union([&at(&w, i - 1), &at(&w, i + 1)]);
        let wi = at(&w, i);
        if let Some((x, y)) = wi.iter().flat_map(|&x| near.iter().map(move |&y| (x, y))).find(|&(x, y)| !g.adjacent(x, y)) {
            return Err(Error::claim("W_i complete to W_{i±1}", format!("{x} misses {y}"), vec![x, y]));
        }
        require_trivial(g, "W_i versus W_{i+2}", &wi, &at(&w, i + 2))?;
        require_trivial(g, "V_i versus W_i", &at(&v, i), &wi)?;
    }
    let sides = split_v(g, &v, "V domination")?;
    let mut w2: [VertexSet; 5] = Default::default();
    let mut w3: [VertexSet; 5] = Default::default();
    let mut w0: [VertexSet; 5] = Default::default();
    for i in 0..5isize {
        let off = union([&at(&sides.minus, i - 2), &at(&sides.plus, i + 2)]);
        let wi = at(&w, i);
        if let Some(&x) = wi.iter().find(|&&x| !g.neighbours_in(x, &off).is_empty()) {
            let y = *g.neighbours_in(x, &off).first().unwrap();
            return Err(Error::claim("W_i anti-complete to V_{i-2}^- ∪ V_{i+2}^+", format!("edge {x}-{y}"), vec![x, y]));
        }
        for &x in &wi {
            let two = !g.neighbours_in(x, &at(&sides.zero, i + 2)).is_empty();
            let three = !g.neighbours_in(x, &at(&sides.zero, i + 3)).is_empty();
            match (two, three) {
                (true, true) => return Err(Error::claim("W_i split", format!("{x} sees both V^0_{{i+2}} and V^0_{{i+3}}"), vec![x])),
                (true, false) => w2[i as usize].insert(x),
                (false, true) => w3[i as usize].insert(x),
                (false, false) => w0[i as usize].insert(x),
            };
        }
    }

    let mut r = Run::new(g, ctx);
    r.stage("detach U");
    r.detach_parts("detach U", &[&u])?;
    r.curious("detach U", [u.clone(), VertexSet::new(), VertexSet::new()])?;
    for i in 0..5isize {
        let name = format!("detach W{}^0 ∪ V{}^+ ∪ V{}^-", i + 1, m5(i - 2) + 1, m5(i + 2) + 1);
        let parts = [at(&w0, i), at(&sides.plus, i - 2), at(&sides.minus, i + 2)];
        r.stage(&name);
        r.detach_parts(&name, &[&parts[0], &parts[1], &parts[2]])?;
        r.curious(&name, parts)?;
    }
    for i in 0..5isize {
        let name = format!("detach W{}^3 ∪ W{}^2 ∪ V{}^0", i + 1, m5(i + 1) + 1, m5(i - 2) + 1);
        let parts = [at(&w3, i), at(&w2, i + 1), at(&sides.zero, i - 2)];
        r.stage(&name);
        r.detach_parts(&name, &[&parts[0], &parts[1], &parts[2]])?;
        r.curious(&name, parts)?;
    }
    r.stage("delete the cycle");
    for x in cycle {
        r.delete(x)?;
    }
    r.finish("K3,P1+P5", Budget::P1P5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c5::check_report;

    #[test]
    fn bare_cycle() {
        let g = Pattern::cycle(5).graph;
        let r = decompose_p1p5(&g).unwrap();
        let t = r.edit_log.tally();
        assert_eq!((t.deletions, t.bipartite_complementations), (5, 0));
        assert!(r.components.is_empty());
        assert_eq!(r.stages[0].name, "detach U");
        assert_eq!(r.stages[0].note.as_deref(), Some("nothing to do"));
        assert!(check_report(&g, &r));
    }

    #[test]
    fn sun_is_outside_the_class() {
        // A pendant at every cycle vertex: two consecutive pendants are
        // non-adjacent, and one of them plus a P5 through the other is P1+P5.
        let g = Graph::from_edges(10, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)])
            .unwrap();
        assert!(matches!(decompose_p1p5(&g), Err(Error::NotMember(w)) if w.pattern == "P1+P5"));
    }

    #[test]
    fn single_pendant() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        let r = decompose_p1p5(&g).unwrap();
        assert!(check_report(&g, &r));
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.edit_log.tally().bipartite_complementations, 1);
    }
}
