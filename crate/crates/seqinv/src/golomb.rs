//! Non-singular feedback shift registers.
//!
//! A feedback polynomial of the form `f = x0 + g(x1, ..., x_{m-1})` makes
//! the register map `(x0, ..., x_{m-1}) -> (x1, ..., x_{m-1}, f(x))` a
//! bijection on `{0,1}^m` for every `g`: the dropped bit `x0` is recoverable
//! from the appended output bit. This module generates sequences from such
//! registers, synthesizes them back from sequence data, and decides
//! non-singularity of arbitrary feedback polynomials by exhaustive image
//! counting (the only general test available at higher degree).

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::hankel::{build_system_vector, BitSequence, HankelSystem, VectorSequence};
use crate::inversion;
use crate::monomial::Polynomial;

/// A non-singular FSR: order `m` and feedback `f = x0 + g` where `g` only
/// involves `x1..x_{m-1}` (a constant term is allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsrSpec {
    order: usize,
    g: Polynomial,
}

impl FsrSpec {
    /// Errors if `g` touches `x0` or a variable at or beyond the order.
    pub fn new(order: usize, g: Polynomial) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("register order must be at least 1".into()));
        }
        for t in g.terms() {
            if t.contains(0) {
                return Err(Error::Parse(format!(
                    "feedback remainder must not involve x0, got term {t}"
                )));
            }
            if let Some(v) = t.max_var() {
                if v >= order {
                    return Err(Error::Parse(format!(
                        "term {t} outside register of order {order}"
                    )));
                }
            }
        }
        let g = Polynomial::new(order, g.terms().cloned());
        Ok(FsrSpec { order, g })
    }

    /// Parses the text form `m=<k>; g=<ANF>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut order = None;
        let mut g_text = None;
        for part in text.split(';') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("m=") {
                order = Some(v.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("bad register order {v:?}"))
                })?);
            } else if let Some(v) = part.strip_prefix("g=") {
                g_text = Some(v.trim().to_string());
            } else if !part.is_empty() {
                return Err(Error::Parse(format!("unexpected field {part:?} in FSR spec")));
            }
        }
        let order = order.ok_or_else(|| Error::Parse("missing m=<k> in FSR spec".into()))?;
        let g_text = g_text.ok_or_else(|| Error::Parse("missing g=<ANF> in FSR spec".into()))?;
        let g = Polynomial::parse_anf(&g_text, order.max(1))?;
        FsrSpec::new(order, g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    /// The full feedback polynomial `x0 + g`.
    pub fn feedback(&self) -> Polynomial {
        let mut terms: Vec<_> = self.g.terms().cloned().collect();
        terms.push(crate::monomial::Monomial::var(0));
        Polynomial::new(self.order, terms)
    }

    pub fn to_spec_string(&self) -> String {
        format!("m={}; g={}", self.order, self.g.to_anf_string())
    }

    /// Feedback value `x0 + g(x1, ..., x_{m-1})` on a state.
    pub fn feedback_bit(&self, state: &BitVec) -> bool {
        state.get(0) ^ self.g.eval(state)
    }
}

/// One register step: shift left, append the feedback bit.
///
/// # Panics
///
/// Panics if the state length differs from the register order.
pub fn fsr_step(spec: &FsrSpec, state: &BitVec) -> BitVec {
    assert_eq!(state.len(), spec.order, "state length must equal register order");
    let mut next = BitVec::zeros(spec.order);
    for i in 1..spec.order {
        if state.get(i) {
            next.set(i - 1, true);
        }
    }
    if spec.feedback_bit(state) {
        next.set(spec.order - 1, true);
    }
    next
}

/// Runs the register from a seed state, emitting `length` output symbols
/// (the seed itself forms the first `m`).
///
/// # Panics
///
/// Panics if the seed length differs from the order or `length < m`.
pub fn generate(spec: &FsrSpec, seed: &BitVec, length: usize) -> BitSequence {
    assert_eq!(seed.len(), spec.order, "seed length must equal register order");
    assert!(length >= spec.order, "length must cover the seed");
    let m = spec.order;
    let mut bits: Vec<bool> = seed.iter().collect();
    for j in 0..length - m {
        let window = BitVec::from_bools(&bits[j..j + m]);
        bits.push(bits[j] ^ spec.g.eval(&window));
    }
    BitSequence::from_bools(&bits)
}

/// The family of registers `f = x0 + g` of order `m`, degree at most `d`,
/// consistent with a sequence, plus the inverse each induces.
#[derive(Clone, Debug)]
pub struct GolombFamily {
    system: HankelSystem,
    /// Canonical `g` coefficients over the system's g-basis.
    pub particular: BitVec,
    /// Kernel of the g-coefficient system.
    pub kernel: Vec<BitVec>,
}

impl GolombFamily {
    pub fn system(&self) -> &HankelSystem {
        &self.system
    }

    fn spec_from(&self, b: &BitVec) -> (FsrSpec, BitVec) {
        let m = self.system.meta.m;
        let g = Polynomial::from_basis(m, self.system.meta.basis.g_monomials(), b);
        let spec = FsrSpec::new(m, g).expect("g-basis monomials never involve x0");
        let inverse = inversion::inverse_from(&self.system, b);
        (spec, inverse)
    }

    /// The canonical member and its inverse.
    pub fn canonical(&self) -> (FsrSpec, BitVec) {
        self.spec_from(&self.particular)
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Enumerates members in deterministic kernel-combination order, up to
    /// `limit`.
    pub fn enumerate(&self, limit: usize) -> Vec<(FsrSpec, BitVec)> {
        let dim = self.kernel.len();
        let total = if dim < 63 { 1usize << dim } else { usize::MAX };
        let count = total.min(limit);
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut b = self.particular.clone();
            for (i, dir) in self.kernel.iter().enumerate() {
                if (k >> i) & 1 == 1 {
                    b.xor_assign(dir);
                }
            }
            out.push(self.spec_from(&b));
        }
        out
    }
}

/// Solves for registers `f = x0 + g` (degree of `g` at most `d`, constant
/// term allowed) whose recurrences a sequence satisfies: the `x0` column is
/// pinned to coefficient 1 and moved to the right-hand side, leaving
/// `h2 * b = rhs + x0-column`. Returns `None` iff that system is
/// inconsistent.
pub fn solve_golomb(seq: &VectorSequence, m: usize, d: usize) -> Result<Option<GolombFamily>> {
    let system = build_system_vector(seq, m, d, true)?;
    let mut target = system.rhs.clone();
    // the bare-x0 column of h1 is column 0 (constant monomial in the h block)
    let x0_col = BitVec::from_bools(
        &(0..system.h1.rows())
            .map(|r| system.h1.get(r, 0))
            .collect::<Vec<_>>(),
    );
    target.xor_assign(&x0_col);
    let Some(particular) = system.h2.solve(&target) else {
        return Ok(None);
    };
    let kernel = system.h2.kernel_basis();
    Ok(Some(GolombFamily {
        system,
        particular,
        kernel,
    }))
}

pub fn solve_golomb_scalar(s: &BitSequence, m: usize, d: usize) -> Result<Option<GolombFamily>> {
    solve_golomb(&VectorSequence::from(s), m, d)
}

pub const NONSINGULAR_EXHAUSTIVE_CAP: usize = 20;

/// Decides whether the register map of an arbitrary feedback polynomial is a
/// bijection on `{0,1}^m`, by exhaustive image counting.
///
/// Errors when `m` exceeds `cap` (cost is `2^m` evaluations).
pub fn is_nonsingular_fsr(f: &Polynomial, m: usize, cap: Option<usize>) -> Result<bool> {
    let cap = cap.unwrap_or(NONSINGULAR_EXHAUSTIVE_CAP);
    if m > cap {
        return Err(Error::OrderTooLarge { m, cap });
    }
    assert!(f.order() == m, "polynomial order must match register length");
    let size = 1usize << m;
    let mut seen = vec![false; size];
    let mut count = 0usize;
    for state_bits in 0..size {
        let state = BitVec::from_u64(state_bits as u64, m);
        let fb = f.eval(&state);
        let image = (state_bits >> 1) | ((fb as usize) << (m - 1));
        if !seen[image] {
            seen[image] = true;
            count += 1;
        }
    }
    Ok(count == size)
}

/// Convenience: bijectivity of a Golomb-form register (always true; used by
/// tests as the exhaustive cross-check).
pub fn spec_is_nonsingular(spec: &FsrSpec, cap: Option<usize>) -> Result<bool> {
    is_nonsingular_fsr(&spec.feedback(), spec.order, cap)
}

/// Length of the state cycle through `seed` (Golomb registers are
/// permutations, so every orbit is a pure cycle).
pub fn state_period(spec: &FsrSpec, seed: &BitVec) -> usize {
    let mut state = fsr_step(spec, seed);
    let mut steps = 1usize;
    while &state != seed {
        state = fsr_step(spec, &state);
        steps += 1;
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::pci_scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn paper_spec() -> FsrSpec {
        FsrSpec::parse("m=3; g=x1 + x2 + x1*x2").unwrap()
    }

    fn random_g(rng: &mut ChaCha8Rng, m: usize, d: usize, allow_constant: bool) -> Polynomial {
        let split = crate::monomial::enumerate_basis(m, d, allow_constant).unwrap();
        let coeffs = BitVec::from_bools(
            &(0..split.g_basis.len()).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>(),
        );
        Polynomial::from_basis(m, &split.g_basis, &coeffs)
    }

    #[test]
    fn step_cases() {
        let spec = paper_spec();
        let s = BitVec::from_bit_str("100").unwrap();
        assert_eq!(fsr_step(&spec, &s).to_bit_string(), "001");
        let shift = FsrSpec::new(3, Polynomial::zero(3)).unwrap();
        let s2 = BitVec::from_bit_str("101").unwrap();
        assert_eq!(fsr_step(&shift, &s2).to_bit_string(), "011");
    }

    #[test]
    fn orbit_returns_to_start() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let m = rng.gen_range(2..6);
            let g = random_g(&mut rng, m, (m - 1).clamp(1, 2), true);
            let spec = FsrSpec::new(m, g).unwrap();
            let seed = BitVec::from_u64(rng.gen_range(0..1u64 << m), m);
            let p = state_period(&spec, &seed);
            assert!(p >= 1 && p <= 1 << m);
        }
    }

    #[test]
    fn generate_paper_register() {
        let spec = paper_spec();
        let seed = BitVec::from_bit_str("100").unwrap();
        let s = generate(&spec, &seed, 8);
        assert_eq!(s.bits().to_bit_string(), "10011100");
    }

    #[test]
    fn generate_pure_shift() {
        let spec = FsrSpec::new(2, Polynomial::zero(2)).unwrap();
        let seed = BitVec::from_bit_str("01").unwrap();
        let s = generate(&spec, &seed, 6);
        assert_eq!(s.bits().to_bit_string(), "010101");
    }

    #[test]
    fn generated_sequence_satisfies_own_recurrences() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let m = rng.gen_range(2..6);
            let d = rng.gen_range(1..=(m - 1).max(1)).min(3);
            let g = random_g(&mut rng, m, d, false);
            let spec = FsrSpec::new(m, g).unwrap();
            let seed = BitVec::from_u64(rng.gen_range(0..1u64 << m), m);
            let s = generate(&spec, &seed, 4 * m + 16);
            let f = spec.feedback();
            for j in 0..s.len() - m {
                assert_eq!(f.eval(&s.window(j, m)), s.get(m + j));
            }
        }
    }

    #[test]
    fn solve_recovers_generating_register() {
        let s = BitSequence::from_bit_str("10011100").unwrap();
        let fam = solve_golomb_scalar(&s, 3, 2).unwrap().expect("consistent");
        let members = fam.enumerate(1 << 10);
        let found = members
            .iter()
            .any(|(sp, _)| sp.g().to_anf_string() == "x1 + x2 + x1*x2");
        assert!(found, "family must contain the generating remainder");
        // the inverse preceding 1,0,0,... is s_2 + g(s_0, s_1) = 0 + g(1,0) = 1
        let (_, inv) = fam.canonical();
        assert_eq!(inv.to_bit_string(), "1");
    }

    #[test]
    fn solve_matches_pinned_column_system() {
        // consistency iff b solves the g-column system with the x0 column
        // folded into the right-hand side
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let len = rng.gen_range(8..16);
            let s = BitSequence::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            let fam = solve_golomb_scalar(&s, 3, 2).unwrap();
            let sys = crate::hankel::build_system(&s, 3, 2, true).unwrap();
            let mut target = sys.rhs.clone();
            for r in 0..sys.h1.rows() {
                if sys.h1.get(r, 0) {
                    let cur = target.get(r);
                    target.set(r, !cur);
                }
            }
            let direct = sys.h2.solve(&target);
            assert_eq!(fam.is_some(), direct.is_some());
            if let (Some(f), Some(b)) = (fam, direct) {
                assert_eq!(f.particular, b);
            }
        }
    }

    #[test]
    fn returned_specs_satisfy_recurrences_and_nonsingularity() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut found = 0;
        while found < 15 {
            let len = rng.gen_range(10..18);
            let s = BitSequence::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            let Some(fam) = solve_golomb_scalar(&s, 4, 2).unwrap() else { continue };
            found += 1;
            for (spec, inv) in fam.enumerate(8) {
                let f = spec.feedback();
                for j in 0..s.len() - 4 {
                    assert_eq!(f.eval(&s.window(j, 4)), s.get(4 + j));
                }
                assert!(spec_is_nonsingular(&spec, None).unwrap());
                // forward re-simulation: stepping from (s_{-1}, s_0, s_1, s_2)
                // must append s_3
                let mut state_bits = vec![inv.get(0)];
                state_bits.extend((0..3).map(|i| s.get(i)));
                let next = fsr_step(&spec, &BitVec::from_bools(&state_bits));
                assert_eq!(next.get(3), s.get(3));
            }
        }
    }

    #[test]
    fn golomb_form_always_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let m = rng.gen_range(1..=12);
            let d = if m == 1 { 1 } else { rng.gen_range(1..m).min(3) };
            let with_constant = rng.gen_bool(0.5);
            let g = if m == 1 {
                Polynomial::zero(1)
            } else {
                random_g(&mut rng, m, d, with_constant)
            };
            let spec = FsrSpec::new(m, g).unwrap();
            assert!(spec_is_nonsingular(&spec, None).unwrap());
        }
    }

    #[test]
    fn ignoring_x0_is_singular() {
        // f = x1 on m=2 collapses states differing only in x0
        let f = Polynomial::parse_anf("x1", 2).unwrap();
        assert!(!is_nonsingular_fsr(&f, 2, None).unwrap());
    }

    #[test]
    fn nonsingularity_matches_image_count_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..30 {
            let m = 8;
            // arbitrary polynomial over all 8 variables, degree <= 2
            let split = crate::monomial::enumerate_basis(m, 2, false).unwrap();
            let all: Vec<crate::monomial::Monomial> = split
                .h_basis
                .iter()
                .map(|mo| mo.times_x0())
                .chain(split.g_basis.iter().cloned())
                .collect();
            let coeffs = BitVec::from_bools(&(0..all.len()).map(|_| rng.gen_bool(0.3)).collect::<Vec<_>>());
            let f = Polynomial::from_basis(m, &all, &coeffs);
            let flag = is_nonsingular_fsr(&f, m, None).unwrap();
            // independent image count through explicit map evaluation
            let mut images = std::collections::HashSet::new();
            for st in 0..256u64 {
                let state = BitVec::from_u64(st, 8);
                let mut next = 0u64;
                for i in 1..8 {
                    next |= (state.get(i) as u64) << (i - 1);
                }
                next |= (f.eval(&state) as u64) << 7;
                images.insert(next);
            }
            assert_eq!(flag, images.len() == 256);
        }
    }

    #[test]
    fn cap_enforced() {
        let f = Polynomial::parse_anf("x0", 30).unwrap();
        assert!(matches!(
            is_nonsingular_fsr(&f, 30, None),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn round_trip_recovers_generator_when_rank_permits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 25 {
            let m = rng.gen_range(2..=6);
            let d = if m == 1 { 1 } else { rng.gen_range(1..m).min(2) };
            let g = random_g(&mut rng, m, d, false);
            let spec = FsrSpec::new(m, g).unwrap();
            let seed = BitVec::from_u64(rng.gen_range(0..1u64 << m), m);
            let split = crate::monomial::enumerate_basis(m, d.max(1), true).unwrap();
            let len = 4 * split.g_basis.len().max(2) + m;
            let s = generate(&spec, &seed, len);
            let fam = solve_golomb_scalar(&s, m, d.max(1)).unwrap().expect("generator satisfies it");
            checked += 1;
            // membership without enumeration: generator - particular must lie
            // in the kernel span
            let g_basis = fam.system.meta.basis.g_monomials().to_vec();
            let mut diff = BitVec::from_bools(
                &g_basis.iter().map(|mo| spec.g().contains_term(mo)).collect::<Vec<_>>(),
            );
            diff.xor_assign(&fam.particular);
            let dim = fam.kernel_dim();
            let mut rows = fam.kernel.clone();
            rows.push(diff);
            let stacked = crate::gf2::BitMatrix::from_rows(&rows);
            assert_eq!(
                stacked.rank(),
                dim,
                "family misses generating g = {}",
                spec.g()
            );
        }
    }

    #[test]
    fn pci_bounded_by_register_order_at_maximal_rank() {
        // A consistent register of order m bounds the inversion complexity
        // whenever the rank profile peaks at or before m. (Without that
        // condition the whole-range maximal-rank rule can settle above m:
        // extra columns at larger orders may raise the rank.)
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 10 {
            let m = rng.gen_range(2..=5);
            let d = if m == 1 { 1 } else { rng.gen_range(1..m).min(2) };
            let g = random_g(&mut rng, m, d, false);
            let spec = FsrSpec::new(m, g).unwrap();
            let seed = BitVec::from_u64(rng.gen_range(1..1u64 << m), m);
            let split = crate::monomial::enumerate_basis(m, d.max(1), false).unwrap();
            let len = (4 * split.n_columns()).max(4 * m) + m;
            let s = generate(&spec, &seed, len);
            if solve_golomb_scalar(&s, m, d.max(1)).unwrap().is_none() {
                continue;
            }
            let report = pci_scalar(&s, d.max(1), false);
            let max_rank = report.max_rank().unwrap_or(0);
            let rank_at_m = report
                .rank_profile
                .iter()
                .find(|&&(k, _)| k == m)
                .map(|&(_, r)| r);
            if rank_at_m == Some(max_rank) {
                let found = report.order.expect("register order is consistent and maximal");
                assert!(found <= m, "pci order {found} above register order {m}");
                checked += 1;
            }
        }
    }
}
