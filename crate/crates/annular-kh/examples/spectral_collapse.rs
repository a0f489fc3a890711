//! The winding filtration: a spectral sequence from annular Khovanov
//! homology that collapses at the second page to plain Khovanov homology.
//!
//! Run with: cargo run --example spectral_collapse

use annular_kh::homology::Coeff;
use annular_kh::spectral::winding_report;
use annular_kh::{akh, kh, SliceWord};

fn main() {
    let sigma1 = SliceWord::from_braid(2, &[1]).unwrap();
    let report = winding_report(&sigma1).unwrap();
    print!("{report}");

    let a = akh(&sigma1, Coeff::Rationals).unwrap();
    let p = kh(&sigma1, Coeff::Rationals).unwrap();
    println!("\nE_1 total {} = annular rank {}", report.page(1).total(), a.total_free());
    println!(
        "E_infinity total {} = plain rank {}",
        report.infinity().total(),
        p.total_free()
    );
    println!("rank bound: {} <= {}", p.total_free(), a.total_free());
}
