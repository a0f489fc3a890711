//! Mirror duality: the rational annular homology of the mirror image at
//! (-h, -q, -k) matches the original at (h, q, k).
//!
//! Run with: cargo run --example mirror_duality

use annular_kh::{mirror_duality_report, SliceWord};

fn main() {
    let words = [
        ("trefoil closure", SliceWord::from_braid(2, &[1, 1, 1]).unwrap()),
        ("sigma_1 closure", SliceWord::from_braid(2, &[1]).unwrap()),
        ("mixed 3-braid", SliceWord::from_braid(3, &[1, -2]).unwrap()),
    ];
    for (name, w) in words {
        let report = mirror_duality_report(&w).unwrap();
        println!(
            "{name}: duality {}",
            if report.symmetric { "holds" } else { "FAILS" }
        );
        if !report.symmetric {
            for (h, q, k, a, b) in &report.mismatches {
                println!("  ({h},{q},{k}): dim {a} vs mirror {b}");
            }
        }
    }

    let trefoil = SliceWord::from_braid(2, &[1, 1, 1]).unwrap();
    let report = mirror_duality_report(&trefoil).unwrap();
    println!("\ntrefoil closure table:");
    print!("{}", report.original);
    println!("mirror table:");
    print!("{}", report.mirrored);
}
