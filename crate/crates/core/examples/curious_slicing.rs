// Slicing curious graphs: the type, the block chain for types 2 and 3, and
// the six-label recomposition.
//
//     cargo run --example curious_slicing

use trifree_cw::curious::{block_structure, curious_cw, curious_type, slice_type01, slice_type23};
use trifree_cw::cwx::exact_cw_expr;
use trifree_cw::cwx::OracleConfig;
use trifree_cw::pipeline::random_curious;
use trifree_cw::Graph;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut shown = [false; 4];
    for seed in 0.. {
        let (g, p) = random_curious(12, seed);
        let t = curious_type(&g, &p)?;
        if shown[t] {
            continue;
        }
        shown[t] = true;
        println!("type {t} (seed {seed}), parts {:?}", p.parts().map(|x| x.len()));
        if t >= 2 {
            let bs = block_structure(&g, &p)?;
            println!("  {} packed 2P2s, {} blocks, {} update moves", bs.packing.len(), bs.blocks.len(), bs.updates.len());
        }
        let d = if t <= 1 { slice_type01(&g, &p)? } else { slice_type23(&g, &p)? };
        for (j, s) in d.slices.iter().enumerate().filter(|(_, s)| !s.vertices().is_empty()) {
            println!("  slice {j}: {:?} {:?} {:?}", s.v1, s.v2, s.v3);
        }
        let e = curious_cw(&g, &p, &mut |h: &Graph| {
            let (_, e) = exact_cw_expr(h, h.n(), OracleConfig::default())?.expect("within n labels");
            Ok(e.expect("nonempty"))
        })?;
        assert!(e.verify(&g));
        println!("  expression width {}", e.width());
        if shown.iter().all(|&s| s) {
            break;
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
