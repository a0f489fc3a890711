//! Compute annular Khovanov homology tables.
//!
//! Run with: cargo run --example annular_table

use annular_kh::homology::Coeff;
use annular_kh::{akh, SliceWord};

fn main() {
    // The core circle of the annulus: one strand through the seam.
    let core = SliceWord::parse("strands 1\n").unwrap();
    println!("== core circle ==");
    print!("{}", akh(&core, Coeff::Integers).unwrap());

    // Closure of the one-crossing braid: an unknot winding twice around
    // the core. Its annular homology sees the winding, so it has rank 4
    // even though the plain Khovanov homology has rank 2.
    let sigma1 = SliceWord::from_braid(2, &[1]).unwrap();
    println!("\n== closure of sigma_1 ==");
    print!("{}", akh(&sigma1, Coeff::Rationals).unwrap());

    // A three-strand mixed braid closure over the integers.
    let mixed = SliceWord::from_braid(3, &[1, -2]).unwrap();
    println!("\n== closure of sigma_1 sigma_2^-1 ==");
    print!("{}", akh(&mixed, Coeff::Integers).unwrap());
}
