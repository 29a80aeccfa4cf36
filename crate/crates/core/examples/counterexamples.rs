// Three small graphs on which a natural structural shortcut fails, and how
// the library copes with each.
//
//     cargo run --example counterexamples

use trifree_cw::c5::{decompose_p1p5, partition_around_c5};
use trifree_cw::curious::{block_structure, slice_type23, TriPartition};
use trifree_cw::patterns::find_induced_cycle;
use trifree_cw::pipeline::{build_cw, is_member, ClassSpec, PrimeCase};
use trifree_cw::{vset, Graph, VertexId};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // 1. Around the C5 0-1-2-3-4, vertex 5 (in W_2) sees 8 but not 9, both in
    // V_2, so W_i need not be trivial to V_i. The decomposition only relies on
    // V_i being trivial to W_i.
    let g = Graph::from_edges(
        10,
        &[(0, 1), (0, 4), (0, 8), (0, 9), (1, 2), (1, 5), (1, 7), (2, 3), (2, 8), (2, 9), (3, 4), (5, 6), (5, 8), (6, 7), (6, 9), (7, 8)],
    )?;
    assert!(is_member(&g, &ClassSpec::p1p5()));
    let ctx = partition_around_c5(&g, [0, 1, 2, 3, 4].map(VertexId))?;
    println!("W2 = {:?}, V2 = {:?}", ctx.w[1], ctx.v[1]);
    let r = decompose_p1p5(&g)?;
    println!("decomposed around {:?} with {} pieces", r.context.cycle, r.components.len());

    // 2. Residues 8 and 9 are adjacent but threshold on opposite sides of the
    // only block, so the pair is moved into the block.
    let h = Graph::from_edges(10, &[(0, 1), (1, 4), (1, 6), (1, 9), (2, 3), (3, 4), (3, 6), (3, 9), (4, 5), (6, 7), (8, 9)])?;
    let p = TriPartition::new(vset([1, 3]), vset([4, 6, 9]), vset([0, 2, 5, 7, 8]));
    let bs = block_structure(&h, &p)?;
    println!("block moves: {:?}; {} slices", bs.updates, slice_type23(&h, &p)?.len());

    // 3. A prime member with both a C5 and a C7: the C7 does not force the
    // whole graph to be a cycle, and the C5 decomposition handles it.
    let k = Graph::from_edges(
        12,
        &[
            (0, 1), (0, 4), (0, 7), (1, 2), (1, 5), (1, 8), (1, 11), (2, 3), (2, 6), (2, 10), (3, 4), (3, 7), (3, 9),
            (4, 5), (4, 11), (5, 6), (5, 7), (5, 10), (6, 8), (6, 9), (6, 11), (7, 8), (7, 11), (8, 10), (9, 10),
        ],
    )?;
    let c7 = find_induced_cycle(&k, 7).expect("an induced C7");
    let built = build_cw(&k, &ClassSpec::p1p5(), 12)?;
    assert_eq!(built.trace.primes[0].case, PrimeCase::C5Decomposition);
    println!("C7 at {:?}; expression width {}", c7.host_vertices(), built.width);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
