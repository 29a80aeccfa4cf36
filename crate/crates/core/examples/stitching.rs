// Undoing deletions and bipartite complementations in expression space.
//
//     cargo run --example stitching

use trifree_cw::cwx::naive_expr;
use trifree_cw::edit::{EditLog, EditOp};
use trifree_cw::pipeline::stitch;
use trifree_cw::{vset, Graph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // Two triangle-free halves glued by a complete bipartite graph, plus a
    // vertex seeing one of each half.
    let g = Graph::from_edges(
        9,
        &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (0, 5), (2, 3), (2, 5), (6, 7), (8, 1), (8, 4), (6, 2)],
    )?;
    let mut log = EditLog::new(&g);
    log.push(EditOp::VertexDeletion { vertex: 8.into() });
    log.push(EditOp::BipartiteComplementation { s: vset([0, 2]), t: vset([3, 5]) });
    let h = log.replay(&g)?;
    let pieces: Vec<_> = h.connected_components().iter().map(|c| naive_expr(&h.induced_subgraph(c).unwrap()).unwrap()).collect();
    println!("{} pieces after the edits, widths {:?}", pieces.len(), pieces.iter().map(|p| p.width()).collect::<Vec<_>>());
    let (e, stats) = stitch(&g, &log, &pieces)?;
    assert!(e.verify(&g));
    println!("stitched: width {}, {} classes, {} joins, {} re-attached", e.width(), stats.classes, stats.class_joins, stats.reattached);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
