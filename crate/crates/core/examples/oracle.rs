// Exact clique-width of small graphs, and the expressions found.
//
//     cargo run --example oracle

use trifree_cw::cwx::{exact_cw_expr, OracleConfig};
use trifree_cw::io::from_graph6;
use trifree_cw::patterns::Pattern;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut named: Vec<(String, trifree_cw::Graph)> =
        ["P4", "C5", "C6", "C7", "S1,2,3", "P2+P4"].iter().map(|n| Ok((n.to_string(), n.parse::<Pattern>()?.graph))).collect::<Result<_, trifree_cw::Error>>()?;
    named.push(("Petersen".into(), from_graph6("IheA@GUAo")?));
    for (name, g) in named {
        let found = exact_cw_expr(&g, 5, OracleConfig::default())?;
        match found {
            Some((k, Some(e))) => {
                assert!(e.verify(&g));
                println!("{name:<9} cw = {k}  {e}");
            }
            Some((k, None)) => println!("{name:<9} cw = {k}"),
            None => println!("{name:<9} cw > 5"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
