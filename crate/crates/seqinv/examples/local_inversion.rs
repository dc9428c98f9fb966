//! Invert black-box maps at a point: collect iterates y, F(y), F(F(y)), ...
//! and read the predecessor off the inverted vector sequence, then confirm
//! with one forward application.
//!
//! Run with: cargo run --example local_inversion

use seqinv::gf2::BitVec;
use seqinv::localinv::{
    cycle_length, iterate_map, local_invert, make_fsr_map, make_permutation_map, BlackBoxMap,
};
use seqinv::golomb::FsrSpec;

fn main() {
    // A register map is cheap to iterate and invertible by construction.
    let map = make_fsr_map(FsrSpec::parse("m=3; g=x1").unwrap());
    let y = BitVec::from_bit_str("100").unwrap();
    let v = iterate_map(&map, &y, 4);
    println!("first iterates of the register map at y=100:");
    for t in 0..4 {
        println!("  F^{t}(y) = {}", v.element(t));
    }
    let p = cycle_length(&map, &y, 1 << 3).unwrap();
    let result = local_invert(&map, &y, 2 * p + 8, 1, false);
    println!(
        "candidate {} verified={} (order used: {:?})",
        result.candidate.as_ref().unwrap(),
        result.verified,
        result.pci_used.order
    );

    // A seeded random permutation of {0,1}^8, inverted from one full cycle.
    let map = make_permutation_map(7, 8).unwrap();
    let y = BitVec::from_bit_str("10110100").unwrap();
    let p = cycle_length(&map, &y, 1 << 8).unwrap();
    println!("\npermutation map (seed 7, n=8): cycle through y has length {p}");
    let result = local_invert(&map, &y, 2 * p + 8, 1, true);
    let candidate = result.candidate.as_ref().unwrap();
    println!("candidate {} verified={}", candidate, result.verified);
    assert_eq!(map.apply(candidate), y);

    // With too few iterates the candidate may fail the forward check; the
    // verification flag keeps the outcome honest.
    let short = local_invert(&map, &y, 12, 1, true);
    println!(
        "short run (12 iterates): candidate={:?} verified={}",
        short.candidate.as_ref().map(|c| c.to_bit_string()),
        short.verified
    );
}
