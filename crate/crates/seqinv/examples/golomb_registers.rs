//! Non-singular feedback shift registers: generate a stream, verify the
//! state map is a bijection, then recover consistent registers from the
//! stream alone.
//!
//! Run with: cargo run --example golomb_registers

use seqinv::gf2::BitVec;
use seqinv::golomb::{
    fsr_step, generate, solve_golomb_scalar, spec_is_nonsingular, state_period, FsrSpec,
};

fn main() {
    let spec = FsrSpec::parse("m=3; g=x1 + x2 + x1*x2").unwrap();
    println!("register: f = x0 + ({})", spec.g());
    println!(
        "state map bijective (exhaustive over 2^3 states): {}",
        spec_is_nonsingular(&spec, None).unwrap()
    );

    let seed = BitVec::from_bit_str("100").unwrap();
    println!("state period through 100: {}", state_period(&spec, &seed));

    let s = generate(&spec, &seed, 8);
    println!("stream: {}", s.bits());

    // Recover registers of order 3, degree 2 from the stream.
    let family = solve_golomb_scalar(&s, 3, 2).unwrap().expect("consistent");
    println!("synthesis kernel dimension: {}", family.kernel_dim());
    for (candidate, inverse) in family.enumerate(8) {
        println!("  g = {:24} inverse bit {}", candidate.g().to_anf_string(), inverse);
    }

    // Check the canonical inverse by stepping the register from the
    // prepended state (s_-1, s_0, s_1): it must append s_2.
    let (canon, inverse) = family.canonical();
    let state = BitVec::from_bools(&[inverse.get(0), s.get(0), s.get(1)]);
    let next = fsr_step(&canon, &state);
    println!(
        "re-simulation from (s_-1, s_0, s_1): appended {} (expected s_2 = {})",
        next.get(2) as u8,
        s.get(2) as u8
    );
}
