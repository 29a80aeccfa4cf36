// The C5 decomposition of a prime (K3,P2+P4)-free graph. The hand-built
// graph below has two consecutive cycle vertices with three private
// neighbours each, which leaves a 3-uniform piece around `U`.
//
//     cargo run --example decompose_p2p4

use trifree_cw::c5::{decompose_p2p4, report_problems, ComponentKind};
use trifree_cw::cwx::exact_cw;
use trifree_cw::pipeline::{build_cw, gen_with_c5, ClassSpec};
use trifree_cw::Graph;

fn star_sets(m: u32) -> Result<Graph, trifree_cw::Error> {
    let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    for j in 0..m {
        let (a, b, u) = (5 + 3 * j, 6 + 3 * j, 7 + 3 * j);
        e.extend([(a, 0), (a, 2), (b, 1), (b, 3), (a, u), (b, u)]);
        e.extend((0..m).filter(|&k| k != j).map(|k| (a, 6 + 3 * k)));
    }
    Graph::from_edges(5 + 3 * m, &e)
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let g = star_sets(3)?;
    let r = decompose_p2p4(&g)?;
    assert!(report_problems(&g, &r).is_empty());
    for c in &r.components {
        match &c.kind {
            ComponentKind::Curious { partition } => {
                println!("curious piece, parts {:?}", partition.parts().map(|p| p.len()))
            }
            ComponentKind::ThreeUniform { recognition } => {
                let e = recognition.expr()?;
                println!(
                    "3-uniform piece on {} vertices: K = {:?}, {} copies, expression width {}",
                    c.graph.n(),
                    recognition.spec.matrix,
                    recognition.spec.m,
                    e.width()
                );
            }
        }
    }
    let counts = r.edit_log.counts;
    println!("{} deletions, {} bipartite complementations", counts.deletions, counts.bipartite_complementations);

    // A random prime member, all the way to an expression.
    let h = gen_with_c5(&ClassSpec::p2p4(), 12, 3)?;
    let built = build_cw(&h, &ClassSpec::p2p4(), 12)?;
    let p = &built.trace.primes[0];
    println!(
        "random member on {} vertices: constructed width {}, exact {:?}, stitched over {} classes",
        h.n(),
        p.constructed_width,
        exact_cw(&h, 8)?,
        p.stitch.as_ref().map_or(0, |s| s.classes)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
