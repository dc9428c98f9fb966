//! Invert a scalar and a vector sequence: find recurrence polynomials that
//! the data satisfies and the prefix element they force.
//!
//! Run with: cargo run --example invert_sequence

use seqinv::hankel::{build_system, build_system_vector, BitSequence, VectorSequence};
use seqinv::inversion::{enumerate_family, solve_invertible};

fn main() {
    // A length-7 scalar sequence, order 3, degree 2.
    let s = BitSequence::from_bit_str("0111000").unwrap();
    let sys = build_system(&s, 3, 2, false).unwrap();
    println!("sequence 0111000, m=3, d=2");
    println!("  recurrence rows: {}, columns: {}", sys.rr_rows(), sys.n_columns());
    println!("  rank: {}", sys.rr_matrix().rank());

    let sol = solve_invertible(&sys).expect("this sequence is invertible");
    println!("  canonical polynomial: {}", sol.polynomial);
    println!("  inverse s_-1 = {}", sol.inverse);
    println!("  common inverse across the family: {}", sol.common_inverse);
    println!(
        "  family size in [{}, {}]",
        sol.count_lower.value, sol.count_upper.value
    );
    let family = enumerate_family(&sys, &sol.family, 64);
    for (coeffs, inverse) in &family.members {
        let f = sys.meta.basis.polynomial(3, &coeffs.a, &coeffs.b);
        println!("    member {f}  ->  s_-1 = {inverse}");
    }

    // A two-coordinate vector sequence needs one polynomial satisfying both
    // coordinate recurrences at once; here that forces a constant term.
    let vs = VectorSequence::new(vec![
        BitSequence::from_bit_str("0111000").unwrap(),
        BitSequence::from_bit_str("1110001").unwrap(),
    ]);
    let sys = build_system_vector(&vs, 3, 1, true).unwrap();
    let sol = solve_invertible(&sys).expect("invertible with a constant term");
    println!("\nvector sequence (0111000, 1110001), m=3, d=1, constant allowed");
    println!("  polynomial: {}", sol.polynomial);
    println!("  inverse vector: {}", sol.inverse);
}
