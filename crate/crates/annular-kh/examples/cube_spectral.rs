//! The cube filtration: the resolution cube as an abstract filtered
//! complex with the sign scheme (-1)^(sum of coordinates from the edge
//! direction on), whose second page recovers annular homology.
//!
//! Run with: cargo run --example cube_spectral

use annular_kh::homology::Coeff;
use annular_kh::spectral::cube_complex_from_word;
use annular_kh::tqft::Mode;
use annular_kh::{akh, SliceWord};

fn main() {
    let word = SliceWord::from_braid(2, &[1, 1]).unwrap();
    let cube = cube_complex_from_word(&word, Mode::Annular, None);

    let failures = cube.check_anticommutation();
    println!(
        "2-face anticommutation over {} vertices: {}",
        cube.vertex_dims.len(),
        if failures.is_empty() { "all faces pass" } else { "FAILED" }
    );

    let report = cube.filtration().unwrap().pages();
    let a = akh(&word, Coeff::Rationals).unwrap();
    println!(
        "E_1 total {} (chain level), E_2 total {} = annular rank {}",
        report.page(1).total(),
        report.page(2).total(),
        a.total_free()
    );
    println!("collapse at page {}", report.collapse_at);
}
