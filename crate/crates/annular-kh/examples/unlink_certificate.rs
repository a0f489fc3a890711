//! Unlink certification: annular homology concentrated at winding zero
//! and matching the unlink table certifies an unlink in the annulus.
//!
//! Run with: cargo run --example unlink_certificate

use annular_kh::{unlink_certificate, SliceWord};

fn main() {
    let split = SliceWord::parse("strands 0\nU 1\nA 1\nU 1\nA 1\n").unwrap();
    let v = unlink_certificate(&split, 2).unwrap();
    println!("split two-component diagram: {v}");

    // The sigma_1 closure is an unknot in the sphere, but it winds around
    // the annulus, so its annular homology is not concentrated at zero.
    let sigma1 = SliceWord::from_braid(2, &[1]).unwrap();
    let v = unlink_certificate(&sigma1, 1).unwrap();
    println!("sigma_1 closure: {v} (support at winding +-2: not an annular unlink)");

    let core = SliceWord::parse("strands 1\n").unwrap();
    let v = unlink_certificate(&core, 1).unwrap();
    println!("core circle: {v} (support at winding +-1)");
}
