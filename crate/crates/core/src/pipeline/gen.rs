//! Seeded generators for class members, C5-anchored instances, curious and
//! sliced 3-partite graphs, and uniform specs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::c5::find_c5;
use crate::curious::{assemble, SliceDecomposition, TriPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::modules::{MdKind, MdTree};
use crate::patterns::{rainbow_violation, RainbowKind};
use crate::uniform::UniformSpec;

use super::{membership, ClassName, ClassSpec};

fn compact(g: &Graph) -> Graph {
    let vs = g.vertices().to_vec();
    g.relabel_ids(|v| VertexId(vs.binary_search(&v).expect("vertex") as u32)).expect("injective")
}

/// Erdős–Rényi sample repaired into the class by deleting the smallest vertex
/// of each witness found, then renumbered to `0..m`.
pub fn gen_class_random(cls: &ClassSpec, n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((a, b));
            }
        }
    }
    let mut g = Graph::from_edges(n as u32, &edges).expect("valid edges");
    while let Some(w) = membership(&g, cls) {
        let first = *w.host_vertices().iter().min().expect("witness is nonempty");
        g = g.without(&[first].into());
    }
    compact(&g)
}

const GROW_RETRIES: u64 = 8;

/// Class member with an induced C5, grown from a C5 by adding vertices in the
/// `U`, `W_i` or `V_i` roles and keeping each addition that stays in the
/// class. For P2+P4 the result is the largest prime quotient containing a C5
/// over a few growth attempts, so it may have fewer than `n` vertices.
pub fn gen_with_c5(cls: &ClassSpec, n: usize, seed: u64) -> Result<Graph> {
    if n < 5 {
        return Err(Error::Precondition(format!("need at least 5 vertices, got {n}")));
    }
    let mut best: Option<Graph> = None;
    for attempt in 0..GROW_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(GROW_RETRIES).wrapping_add(attempt));
        let g = grow(cls, n, &mut rng)?;
        let candidate = match cls.name {
            ClassName::P1P5 => g,
            ClassName::P2P4 => prime_part_with_c5(&g).expect("the seed cycle survives in some prime quotient"),
        };
        if best.as_ref().map_or(true, |b| candidate.n() > b.n()) {
            best = Some(candidate);
        }
        if best.as_ref().is_some_and(|b| b.n() == n) {
            break;
        }
    }
    Ok(compact(&best.expect("at least one attempt")))
}

fn grow(cls: &ClassSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let cycle: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let mut g = Graph::from_edges(5, &cycle)?;
    let density = rng.gen_range(0.1..0.6);
    let mut next = 5u32;
    for _ in 0..40 * n {
        if g.n() >= n {
            break;
        }
        let others: Vec<VertexId> = g.vertices().iter().copied().filter(|v| v.0 >= 5).collect();
        let i = rng.gen_range(0..5u32);
        let mut nbrs: Vec<VertexId> = match rng.gen_range(0..5) {
            0 => vec![],
            1 | 2 => vec![VertexId(i)],
            _ => vec![VertexId((i + 4) % 5), VertexId((i + 1) % 5)],
        };
        let on_cycle = nbrs.len();
        nbrs.extend(others.iter().copied().filter(|_| rng.gen_bool(density)));
        if nbrs.is_empty() || (on_cycle == 0 && nbrs.len() == on_cycle) {
            continue;
        }
        let x = VertexId(next);
        let h = Graph::new(
            g.vertices().iter().copied().chain([x]),
            g.edges().into_iter().chain(nbrs.iter().map(|&y| (x, y))),
        )?;
        if membership(&h, cls).is_none() {
            g = h;
            next += 1;
        }
    }
    Ok(g)
}

/// Largest prime quotient of the modular decomposition that has an induced C5,
/// as a graph on the representative vertices.
fn prime_part_with_c5(g: &Graph) -> Option<Graph> {
    g.modular_decomposition()
        .internal_nodes()
        .into_iter()
        .filter_map(|t| match t {
            MdTree::Internal { kind: MdKind::Prime, quotient, .. } if find_c5(quotient).is_some() => Some(quotient.clone()),
            _ => None,
        })
        .max_by_key(Graph::n)
}

/// Random curious graph on `n` vertices with its partition. Half the draws
/// nest slice assemblies (which reach types 2 and 3), half repair a random
/// 3-partite graph by breaking rainbow triangles and filling rainbow
/// independent triples.
pub fn random_curious(n: usize, seed: u64) -> (Graph, TriPartition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = if rng.gen_bool(0.5) {
            let depth = rng.gen_range(0..=2);
            let mut next = 0;
            let (p, g) = nested(&mut rng, &mut next, n, depth);
            Some((g, p))
        } else {
            repaired(&mut rng, n)
        };
        if let Some((g, p)) = candidate {
            if rainbow_violation(&g, &p).expect("valid partition").is_none() {
                return (g, p);
            }
        }
    }
}

fn random_parts(rng: &mut ChaCha8Rng, ids: impl IntoIterator<Item = VertexId>, used: &[usize]) -> TriPartition {
    let mut parts: [VertexSet; 3] = Default::default();
    for v in ids {
        parts[*used.choose(rng).expect("some part")].insert(v);
    }
    TriPartition::from_parts(parts)
}

fn random_cross_edges(rng: &mut ChaCha8Rng, p: &TriPartition, density: f64) -> Vec<(VertexId, VertexId)> {
    let vs: Vec<VertexId> = p.vertices().into_iter().collect();
    let mut edges = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if p.part_of(a) != p.part_of(b) && rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn nested(rng: &mut ChaCha8Rng, next: &mut u32, n: usize, depth: usize) -> (TriPartition, Graph) {
    if depth == 0 || n < 8 {
        return bipartite_slice(rng, next, n);
    }
    // Slices of at least four vertices, so that each can carry its own 2P2.
    let k = rng.gen_range(2..=3).min(n / 4);
    let mut sizes = vec![4; k];
    for _ in 4 * k..n {
        sizes[rng.gen_range(0..k)] += 1;
    }
    // Distinct rotations put the 2P2s of bipartite slices into distinct
    // pairs of parts, which is what reaches type 3.
    let mut rotations = [0, 1, 2];
    rotations.shuffle(rng);
    let slices: Vec<(TriPartition, Graph)> = sizes
        .into_iter()
        .zip(rotations)
        .map(|(s, r)| {
            let (p, g) = nested(rng, next, s, depth - 1);
            (p.rotate(r), g)
        })
        .collect();
    let g = assemble(&slices).expect("disjoint slices");
    let d = SliceDecomposition::new(slices.into_iter().map(|(p, _)| p).collect());
    (d.partition(), g)
}

/// Random bipartite graph between the first two parts, usually with a
/// planted induced 2P2 on its first four vertices.
fn bipartite_slice(rng: &mut ChaCha8Rng, next: &mut u32, n: usize) -> (TriPartition, Graph) {
    let ids: Vec<VertexId> = (*next..*next + n as u32).map(VertexId).collect();
    *next += n as u32;
    let (a, b) = (0, 1);
    let plant = n >= 4 && rng.gen_bool(0.8);
    let mut parts: [VertexSet; 3] = Default::default();
    for (i, &v) in ids.iter().enumerate() {
        let side = if plant && i < 4 { [a, b][i % 2] } else { *[a, b].choose(rng).expect("two sides") };
        parts[side].insert(v);
    }
    let p = TriPartition::from_parts(parts);
    let density = rng.gen_range(0.2..0.8);
    let mut edges = random_cross_edges(rng, &p, density);
    if plant {
        let q = &ids[..4];
        edges.retain(|&(x, y)| !(q.contains(&x) && q.contains(&y)));
        edges.extend([(q[0], q[1]), (q[2], q[3])]);
    }
    (p, Graph::new(ids, edges).expect("valid slice"))
}

fn repaired(rng: &mut ChaCha8Rng, n: usize) -> Option<(Graph, TriPartition)> {
    let p = random_parts(rng, (0..n as u32).map(VertexId), &[0, 1, 2]);
    let density = rng.gen_range(0.2..0.8);
    let mut g = Graph::new(p.vertices(), random_cross_edges(rng, &p, density)).expect("valid graph");
    for _ in 0..10 * n * n {
        let Some(r) = rainbow_violation(&g, &p).expect("valid partition") else {
            return Some((g, p));
        };
        let [a, b, c] = r.triple;
        let (x, y) = *[(a, b), (a, c), (b, c)].choose(rng).expect("three pairs");
        let mut edges = g.edges();
        match r.kind {
            RainbowKind::K3 => edges.retain(|&e| e != (x, y) && e != (y, x)),
            RainbowKind::ThreeP1 => edges.push((x, y)),
        }
        g = Graph::new(g.vertices().iter().copied(), edges).expect("valid graph");
    }
    None
}

/// Random 3-partite graph on `n` vertices built from 2 to 5 slices of at most
/// four vertices each, with the slices and the partition.
pub fn random_sliced(n: usize, seed: u64) -> (Graph, TriPartition, SliceDecomposition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=5).min(n.max(1)).max(n.div_ceil(4));
    let mut sizes = vec![1; k];
    let mut left = n.saturating_sub(k);
    while left > 0 {
        let j = rng.gen_range(0..k);
        if sizes[j] < 4 {
            sizes[j] += 1;
            left -= 1;
        }
    }
    let mut next = 0u32;
    let slices: Vec<(TriPartition, Graph)> = sizes
        .into_iter()
        .map(|s| {
            let ids: Vec<VertexId> = (next..next + s as u32).map(VertexId).collect();
            next += s as u32;
            let p = random_parts(&mut rng, ids.iter().copied(), &[0, 1, 2]);
            let edges = random_cross_edges(&mut rng, &p, 0.5);
            (p, Graph::new(ids, edges).expect("valid slice"))
        })
        .collect();
    let g = assemble(&slices).expect("disjoint slices");
    let d = SliceDecomposition::new(slices.into_iter().map(|(p, _)| p).collect());
    (g, d.partition(), d)
}

/// Uniform spec with a random symmetric matrix and random base graph.
pub fn random_uniform_spec(k: usize, m: usize, seed: u64) -> UniformSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrix = vec![vec![0u8; k]; k];
    let mut base = Vec::new();
    for i in 0..k {
        for j in i..k {
            let bit = u8::from(rng.gen_bool(0.5));
            matrix[i][j] = bit;
            matrix[j][i] = bit;
            if i < j && rng.gen_bool(0.5) {
                base.push([i as u32 + 1, j as u32 + 1]);
            }
        }
    }
    UniformSpec { k, matrix, base, m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curious::curious_type;
    use crate::patterns::find_induced_cycle;

    #[test]
    fn random_members_are_members() {
        for cls in ClassSpec::all() {
            assert_eq!(gen_class_random(&cls, 0, 0.5, 1).n(), 0);
            let empty = gen_class_random(&cls, 6, 0.0, 1);
            assert_eq!((empty.n(), empty.edge_count()), (6, 0));
            for seed in 0..20 {
                let g = gen_class_random(&cls, 12, 0.3, seed);
                assert!(membership(&g, &cls).is_none());
                assert_eq!(g, gen_class_random(&cls, 12, 0.3, seed));
            }
        }
    }

    #[test]
    fn c5_instances() {
        for cls in ClassSpec::all() {
            assert_eq!(gen_with_c5(&cls, 5, 3).unwrap(), crate::patterns::Pattern::cycle(5).graph);
            for seed in 0..10 {
                let g = gen_with_c5(&cls, 12, seed).unwrap();
                assert!(membership(&g, &cls).is_none());
                assert!(find_induced_cycle(&g, 5).is_some());
                assert!(g.is_connected());
                if cls.name == ClassName::P2P4 {
                    assert!(g.is_prime());
                }
            }
        }
        assert!(gen_with_c5(&ClassSpec::p2p4(), 4, 0).is_err());
    }

    #[test]
    fn curious_draws_reach_every_type() {
        let mut seen = [false; 4];
        for seed in 0..300 {
            let (g, p) = random_curious(12, seed);
            assert_eq!(g.n(), 12);
            seen[curious_type(&g, &p).unwrap()] = true;
        }
        assert_eq!(seen, [true; 4]);
    }

    #[test]
    fn sliced_draws_validate() {
        for seed in 0..50 {
            let (g, p, d) = random_sliced(15, seed);
            assert_eq!(g.n(), 15);
            d.validate(&g, &p).unwrap();
        }
    }
}
