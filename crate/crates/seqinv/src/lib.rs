//! Inversion of finite binary sequences via polynomial recurrence relations.
//!
//! A length-`M` sequence over GF(2) satisfies a recurrence of order `m` when
//! some polynomial `f` in `m` variables reproduces each element from the `m`
//! preceding ones. Writing `f = x0*h + g`, those recurrences are linear in
//! the coefficients of `h` and `g`, so candidate polynomials — and the
//! prefix element `s_{-1}` that extends the sequence consistently — are found
//! by solving bit-matrix systems built from monomial evaluations over the
//! sequence windows.
//!
//! The crate provides:
//!
//! - [`gf2`]: bit-packed GF(2) vectors/matrices with rank, RREF with
//!   transform tracking, solving, and kernel bases;
//! - [`monomial`]: monomials, ANF polynomials, and the canonical h/g column
//!   bases;
//! - [`hankel`]: recurrence-system construction for scalar sequences, vector
//!   sequences, and custom monomial sets;
//! - [`inversion`]: associated-polynomial families, existence and
//!   common-inverse rank tests, the inverse formula, and counting bounds;
//! - [`complexity`]: PCI(d) search, linear-complexity inversion with a
//!   Berlekamp-Massey cross-check, maximal order complexity, and
//!   monomial-set complexity;
//! - [`golomb`]: non-singular feedback shift registers (`f = x0 + g`),
//!   generation, synthesis from data, and bijectivity checks;
//! - [`localinv`]: local inversion of black-box maps `F: {0,1}^n -> {0,1}^n`
//!   through their iterate sequences;
//! - [`experiments`]: a seeded Monte-Carlo harness for partial-sequence
//!   inversion statistics;
//! - [`cli`]: the `seqinv` command-line front end emitting JSON reports.
//!
//! Bit orientation everywhere: the leftmost character of a bit string is
//! `s_0` (equivalently state bit 0).

pub mod cli;
pub mod complexity;
pub mod error;
pub mod experiments;
pub mod gf2;
pub mod golomb;
pub mod hankel;
pub mod inversion;
pub mod localinv;
pub mod monomial;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use hankel::{BitSequence, HankelSystem, MonomialSet, VectorSequence};
pub use monomial::{enumerate_basis, BasisSplit, Monomial, Polynomial};
