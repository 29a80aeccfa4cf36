// Members of both classes on up to eight vertices, with a histogram of
// exact and constructed widths.
//
//     cargo run --release --example class_census

use std::collections::BTreeMap;

use trifree_cw::cwx::exact_cw;
use trifree_cw::pipeline::{build_cw, enumerate_small, ClassSpec};

pub fn run_up_to(max_n: usize) -> Result<(), Box<dyn std::error::Error>> {
    for cls in ClassSpec::all() {
        let mut hist: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut per_n = Vec::new();
        for n in 1..=max_n {
            let members = enumerate_small(n, Some(&cls))?;
            per_n.push(members.len());
            for g in members {
                let built = build_cw(&g, &cls, 12)?.width;
                let exact = exact_cw(&g, built)?.expect("built width is an upper bound");
                *hist.entry((exact, built)).or_default() += 1;
            }
        }
        println!("{cls}: members per n = {per_n:?}");
        for ((exact, built), count) in hist {
            println!("  exact {exact}, constructed {built}: {count}");
        }
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_up_to(6)
}

#[allow(dead_code)]
fn main() {
    run_up_to(8).unwrap();
}
