//! Reduced colored Khovanov homology of a knot by cabling its 1-1 tangle.
//!
//! Run with: cargo run --example colored_khovanov

use annular_kh::{colored_khr, SliceWord};

fn main() {
    // The unknot as a 1-1 tangle is a single vertical strand; every cable
    // of it is an identity braid, so each colored group is 1-dimensional.
    let unknot = SliceWord::parse("strands 1\n").unwrap();
    for n in 1..=3 {
        let t = colored_khr(&unknot, n).unwrap();
        println!("unknot, {n} cable(s): dim {}", t.total());
    }

    // The trefoil as a 1-1 tangle: sigma_1^3 closed off inside a ball.
    // With one cable this is the reduced Khovanov homology (dimension 3).
    let trefoil = SliceWord::parse("strands 1\nU 2\nP 1\nP 1\nP 1\nA 2\n").unwrap();
    let t = colored_khr(&trefoil, 1).unwrap();
    println!("\ntrefoil tangle, 1 cable: dim {} (reduced Khovanov homology)", t.total());
    print!("{t}");

    // The 2-cable doubles the strands and squares the crossing count;
    // gradings follow the blackboard framing with no correction twists.
    let cabled = trefoil.cable(2).unwrap();
    println!(
        "\n2-cable word: {} strands through the seam, {} crossings",
        cabled.seam_width(),
        cabled.crossings()
    );
    let t2 = colored_khr(&trefoil, 2).unwrap();
    println!("trefoil tangle, 2 cables: dim {}", t2.total());
}
