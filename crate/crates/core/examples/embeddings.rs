// Labelled induced subgraphs over a poset, and Higman's order on words.
//
//     cargo run --example embeddings

use std::collections::BTreeMap;

use trifree_cw::patterns::Pattern;
use trifree_cw::wqo::{higman_leq, labelled_embedding, LabelledGraphW, Poset};
use trifree_cw::VertexId;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = Poset::from_json(r#"{"elements": ["low", "mid", "high"], "covers": [["low", "mid"], ["mid", "high"]]}"#)?;
    let label = |xs: &[usize]| -> BTreeMap<VertexId, usize> { xs.iter().enumerate().map(|(i, &l)| (VertexId(i as u32), l)).collect() };

    // A P3 whose middle is "high" fits into a P5 only where the image of the
    // middle is "high" too.
    let p3 = LabelledGraphW::new(Pattern::path(3).graph, label(&[0, 2, 0]))?;
    for mids in [[0, 0, 2, 0, 0], [2, 0, 0, 0, 2]] {
        let p5 = LabelledGraphW::new(Pattern::path(5).graph, label(&mids))?;
        println!("P3 into P5 labelled {mids:?}: {:?}", labelled_embedding(&p3, &p5, &p)?);
    }

    let leq = |a: &usize, b: &usize| p.leq(*a, *b);
    println!("low high <= mid low high: {}", higman_leq(&[0, 2], &[1, 0, 2], leq));
    println!("high low <= low high: {}", higman_leq(&[2, 0], &[0, 2], leq));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
