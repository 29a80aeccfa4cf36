// k-uniform graphs and their 2k-label expressions.
//
//     cargo run --example uniform_graphs

use trifree_cw::io::to_graph6;
use trifree_cw::pipeline::random_uniform_spec;
use trifree_cw::uniform::{realize, uniform_cw_expr, UniformSpec};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = UniformSpec::k3_family(4);
    let g = realize(&spec)?;
    let e = uniform_cw_expr(&spec)?;
    println!("triangle family, 4 copies: {} ({} edges), width {}", to_graph6(&g), g.edge_count(), e.width());
    println!("spec json: {}", serde_json::to_string(&spec)?);

    for (k, m, seed) in [(2, 5, 1), (3, 4, 2), (4, 3, 3)] {
        let spec = random_uniform_spec(k, m, seed);
        let g = realize(&spec)?;
        let e = uniform_cw_expr(&spec)?;
        assert!(e.verify(&g) && e.width() <= 2 * k);
        println!("k = {k}, m = {m}: {} vertices, {} edges, width {} <= {}", g.n(), g.edge_count(), e.width(), 2 * k);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
