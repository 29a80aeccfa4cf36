// Membership, an expression, and its check.
//
//     cargo run --example quickstart

use trifree_cw::patterns::Pattern;
use trifree_cw::pipeline::{build_cw, membership, ClassSpec};
use trifree_cw::Graph;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // C5 with pendant vertices on two neighbouring cycle vertices.
    let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6)])?;

    for cls in ClassSpec::all() {
        match membership(&g, &cls) {
            Some(w) => println!("{cls}: contains {} at {:?}", w.pattern, w.host_vertices()),
            None => {
                let r = build_cw(&g, &cls, 12)?;
                println!("{cls}: member, expression of width {} ({} prime quotients)", r.width, r.trace.primes.len());
                assert!(r.expr.verify(&g));
            }
        }
    }

    // Eight vertices on a cycle are too many for P2+P4-freeness.
    let c8 = Pattern::cycle(8).graph;
    let w = membership(&c8, &ClassSpec::p2p4()).expect("C8 has an induced P2+P4");
    println!("C8 witness: {} -> {:?}", w.pattern, w.vertex_map);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
