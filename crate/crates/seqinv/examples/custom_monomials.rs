//! Restrict the recurrence search to a hand-picked monomial set and measure
//! the complexity sqrt(rank * order) relative to it.
//!
//! Run with: cargo run --example custom_monomials

use seqinv::complexity::complexity_relative;
use seqinv::gf2::BitVec;
use seqinv::hankel::{build_system_custom, BitSequence, MonomialSet, VectorSequence};
use seqinv::inversion::solve_invertible;
use seqinv::monomial::Polynomial;

fn main() {
    // Degree-2 monomials spread over four variables; x0-multiples feed the
    // prefix side, the rest the remainder side.
    let mset = MonomialSet::parse("x0*x1 + x0*x2 + x1*x2 + x2*x3").unwrap();
    println!("monomial set: {}  (order {})", mset.to_anf_string(), mset.order());

    // Data generated by a recurrence living inside the set:
    // s_{t+4} = s_t s_{t+1} + s_{t+2} s_{t+3}.
    let generator = Polynomial::parse_anf("x0*x1 + x2*x3", 4).unwrap();
    let mut bits = vec![true, false, true, true];
    for t in 0..28 {
        let window = BitVec::from_bools(&bits[t..t + 4]);
        bits.push(generator.eval(&window));
    }
    let s = BitSequence::from_bools(&bits);
    let seq = VectorSequence::from(&s);
    println!("generated stream: {}", s.bits());

    let sys = build_system_custom(&seq, &mset).unwrap();
    println!(
        "rows {}, columns {}, rank {}",
        sys.rr_rows(),
        sys.n_columns(),
        sys.rr_matrix().rank()
    );

    match solve_invertible(&sys) {
        Some(sol) => println!(
            "invertible over this set: f = {}, inverse {}",
            sol.polynomial, sol.inverse
        ),
        None => println!("no polynomial over this set inverts the sequence"),
    }

    let c = complexity_relative(&seq, &mset).unwrap();
    match c.value() {
        Some(v) => println!("relative complexity sqrt({} * {}) = {v:.3}", c.rank, c.order),
        None => println!("relative complexity undefined (no invertible solution)"),
    }

    // Random-looking data rarely fits such a small set: the complexity is
    // then undefined by definition.
    let other = BitSequence::from_bit_str("1011010011010110").unwrap();
    let c_other = complexity_relative(&VectorSequence::from(&other), &mset).unwrap();
    println!(
        "\nunrelated stream over the same set: defined={}, value={:?}",
        c_other.defined,
        c_other.value()
    );
}
