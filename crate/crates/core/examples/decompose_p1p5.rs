// The C5 decomposition of a (K3,P1+P5)-free graph, stage by stage, and the
// replay of its edit log.
//
//     cargo run --example decompose_p1p5 -- [n] [seed]

use trifree_cw::c5::{decompose_p1p5, report_problems, Budget, ComponentKind};
use trifree_cw::pipeline::{gen_with_c5, ClassSpec};

pub fn run_with(n: usize, seed: u64) -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_with_c5(&ClassSpec::p1p5(), n, seed)?;
    println!("graph: {}", trifree_cw::io::to_json(&g));
    let r = decompose_p1p5(&g)?;
    let ctx = &r.context;
    println!("cycle {:?}, |U| = {}", ctx.cycle, ctx.u.len());
    for i in 0..5 {
        println!("  W{} = {:?}  V{} = {:?}", i + 1, ctx.w[i], i + 1, ctx.v[i]);
    }
    for s in &r.stages {
        println!("{:<40} {} deletions, {} bipartite complementations", s.name, s.counts.deletions, s.counts.bipartite_complementations);
    }
    for c in &r.components {
        if let ComponentKind::Curious { partition } = &c.kind {
            let sizes = partition.parts().map(|p| p.len());
            println!("curious piece on {} vertices, parts {sizes:?}", c.graph.n());
        }
    }
    let used = r.edit_log.counts;
    let b = Budget::P1P5;
    println!(
        "used {} of {} deletions, {} of {} complementations, {} of {} pieces",
        used.deletions, b.deletions, used.bipartite_complementations, b.bipartite_complementations, r.components.len(), b.curious
    );
    let problems = report_problems(&g, &r);
    assert!(problems.is_empty(), "{problems:?}");
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_with(14, 7)
}

#[allow(dead_code)]
fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    run_with(args.first().map_or(14, |&n| n as usize), args.get(1).copied().unwrap_or(7)).unwrap();
}
