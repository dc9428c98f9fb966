//! Complexity measures of one sequence: maximal order complexity, inversion
//! complexity at several degrees, and the Berlekamp-Massey linear
//! complexity.
//!
//! Run with: cargo run --example complexity_profile

use seqinv::complexity::{berlekamp_massey, lc_inverse, moc, pci_scalar};
use seqinv::gf2::BitVec;
use seqinv::golomb::{generate, FsrSpec};

fn main() {
    // Stream from a degree-2 register of order 5.
    let spec = FsrSpec::parse("m=5; g=x1 + x3 + x2*x4").unwrap();
    let seed = BitVec::from_bit_str("10010").unwrap();
    let s = generate(&spec, &seed, 160);
    println!("register {}", spec.to_spec_string());
    println!("stream prefix: {}...", s.bits().slice(0, 48));

    println!("\nmaximal order complexity: {}", moc(&s).unwrap());
    println!("berlekamp-massey linear complexity: {}", berlekamp_massey(&s));

    for d in 1..=3 {
        let report = pci_scalar(&s, d, false);
        match report.order {
            Some(m) => {
                let sol = report.solution.as_ref().unwrap();
                println!(
                    "degree {d}: order {m}, n_C {}, inverse {}, polynomial {}",
                    report.n_c.unwrap(),
                    sol.inverse,
                    sol.polynomial
                );
            }
            None => println!("degree {d}: {:?}", report.status),
        }
    }

    // The degree-1 wrapper pins the x0 coefficient to 1 and also reports the
    // recovered linear recurrence.
    if let Some(lc) = lc_inverse(&s) {
        println!(
            "\nlinear inversion: order {}, f = {}, inverse {}",
            lc.order, lc.polynomial, lc.inverse as u8
        );
    }
}
