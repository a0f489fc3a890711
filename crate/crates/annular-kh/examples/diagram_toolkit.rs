//! The diagram toolkit: parsing, serializing, seam rotation, disjoint
//! union, cabling, and the cube of resolutions underneath.
//!
//! Run with: cargo run --example diagram_toolkit

use annular_kh::cube::{resolve, Vertex};
use annular_kh::SliceWord;

fn main() {
    let text = "strands 2\nP 1\n";
    let sigma1 = SliceWord::parse(text).unwrap();
    println!("parsed: {sigma1}");
    println!("round-trips: {}", SliceWord::parse(&sigma1.to_text()).unwrap() == sigma1);

    // Every cube vertex resolves to circles tagged with winding numbers.
    for bits in 0..1u64 << sigma1.crossings() {
        let state = resolve(&sigma1, Vertex::new(bits));
        let windings: Vec<i32> = state.circles().iter().map(|c| c.winding).collect();
        println!("resolution {bits:0width$b}: windings {windings:?}", width = sigma1.crossings());
    }

    // Seam rotation slides the first slice around the annulus.
    let unknot = SliceWord::parse("strands 0\nU 1\nA 1\n").unwrap();
    println!("\nunknot word: {unknot}");
    println!("rotated:     {}", unknot.seam_rotate());

    // Disjoint union stacks a second diagram above the first.
    let core = SliceWord::parse("strands 1\n").unwrap();
    let both = unknot.disjoint_union(&core);
    println!("union with the core circle: {both}");

    // Cabling replaces each strand with parallel copies.
    println!("2-cable of the sigma_1 word: {}", sigma1.cable(2).unwrap());

    // Mirrors swap every crossing.
    let braid = SliceWord::from_braid(3, &[1, -2]).unwrap();
    println!("\nbraid word: {braid}");
    println!("mirror:     {}", braid.mirror());
    println!("components: {}", braid.link_components());
}
