//! Braid detection: a tangle closes up to a braid exactly when its tangle
//! Khovanov homology is one-dimensional.
//!
//! Run with: cargo run --example braid_detection

use annular_kh::{braid_certificate, tkh, SliceWord};

fn main() {
    let candidates = [
        ("identity braid on 3 strands", SliceWord::from_braid(3, &[]).unwrap()),
        ("sigma_1 in B_2", SliceWord::from_braid(2, &[1]).unwrap()),
        ("sigma_1 sigma_2^-1 in B_3", SliceWord::from_braid(3, &[1, -2]).unwrap()),
        (
            "turnback tangle (cap then cup)",
            SliceWord::parse("strands 2\nA 1\nU 1\n").unwrap(),
        ),
        (
            "sigma_1^2 composed with a turnback",
            SliceWord::parse("strands 2\nP 1\nP 1\nA 1\nU 1\n").unwrap(),
        ),
    ];
    for (name, word) in candidates {
        let table = tkh(&word).unwrap();
        let verdict = braid_certificate(&word).unwrap();
        println!(
            "{name}: tangle homology dimension {} -> {}",
            table.total(),
            if verdict.passed { "braid" } else { "not a braid" }
        );
    }
}
