//! Plain Khovanov homology with integer torsion.
//!
//! Run with: cargo run --example plain_khovanov

use annular_kh::homology::Coeff;
use annular_kh::{kh, SliceWord};

fn main() {
    // The right-handed trefoil in a ball: plat closure of sigma_2^3.
    let trefoil =
        SliceWord::parse("strands 0\nU 1\nU 1\nP 2\nP 2\nP 2\nA 1\nA 1\n").unwrap();
    println!("== trefoil over Z ==");
    let g = kh(&trefoil, Coeff::Integers).unwrap();
    print!("{g}");
    println!("total free rank {}, torsion summands {}", g.total_free(), g.total_torsion());

    // Over F2 the torsion spreads into two extra dimensions.
    println!("\n== trefoil over F2 ==");
    let f2 = kh(&trefoil, Coeff::PrimeField(2)).unwrap();
    print!("{f2}");

    // The Hopf link is torsion-free with rank four.
    let hopf = SliceWord::parse("strands 0\nU 1\nU 1\nP 2\nP 2\nA 1\nA 1\n").unwrap();
    println!("\n== Hopf link over Z ==");
    print!("{}", kh(&hopf, Coeff::Integers).unwrap());
}
