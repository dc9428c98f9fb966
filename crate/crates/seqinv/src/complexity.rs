//! Complexity measures of sequences tied to inversion.
//!
//! The central search is [`pci`]: at a fixed degree `d` it scans every order
//! `m` that leaves enough recurrence rows (`n*(M - m) >= n_C(m, d)`),
//! computes the recurrence-matrix rank for each, and reports the smallest
//! order whose rank is maximal over the scanned range and whose augmented
//! system is consistent. The whole feasible range is scanned rather than
//! stopping at the first rank plateau; the range is finite because the
//! column count grows with the order while the row count shrinks.
//!
//! Degree 1 specializes to linear-complexity inversion, cross-checkable
//! against [`berlekamp_massey`]. [`moc`] is the degree-free floor: the
//! shortest window length at which the window-to-successor relation observed
//! in the sequence is a function.

use crate::error::{Error, Result};
use crate::hankel::{build_system_custom, build_system_vector, BitSequence, HankelSystem, MonomialSet, VectorSequence};
use crate::inversion::{solve_invertible, InversionSolution};
use crate::monomial::Polynomial;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PciStatus {
    Found,
    /// No order satisfies the row-count bound.
    NoFeasibleOrder,
    /// Orders exist but none with maximal rank admits an invertible solution.
    NoInvertibleSolution,
}

/// Outcome of a [`pci`] search.
#[derive(Clone, Debug)]
pub struct PciReport {
    pub d: usize,
    pub allow_constant: bool,
    /// The complexity: smallest maximal-rank order with an invertible
    /// solution.
    pub order: Option<usize>,
    /// Inclusive range of orders satisfying the row-count bound.
    pub feasible: Option<(usize, usize)>,
    /// `(m, rank)` for every feasible order, ascending.
    pub rank_profile: Vec<(usize, usize)>,
    /// Column count at the found order.
    pub n_c: Option<usize>,
    pub solution: Option<InversionSolution>,
    pub status: PciStatus,
}

impl PciReport {
    pub fn max_rank(&self) -> Option<usize> {
        self.rank_profile.iter().map(|&(_, r)| r).max()
    }
}

/// Searches for the inversion complexity of `seq` at degree `d`.
///
/// Feasible orders are `m >= max(d, 1)` with `n*(M - m) >= n_C(m, d)`.
/// Consistency of the augmented system is tested only for orders that pass
/// the maximal-rank test, in ascending order; the first hit wins.
pub fn pci(seq: &VectorSequence, d: usize, allow_constant: bool) -> PciReport {
    let n = seq.dimension();
    let len = seq.len();
    let mut systems: Vec<HankelSystem> = Vec::new();
    let mut rank_profile = Vec::new();
    let mut m = d.max(1);
    while m < len {
        let Ok(sys) = build_system_vector(seq, m, d, allow_constant) else {
            break;
        };
        if n * (len - m) < sys.n_columns() {
            break;
        }
        rank_profile.push((m, sys.rr_matrix().rank()));
        systems.push(sys);
        m += 1;
    }
    if systems.is_empty() {
        return PciReport {
            d,
            allow_constant,
            order: None,
            feasible: None,
            rank_profile,
            n_c: None,
            solution: None,
            status: PciStatus::NoFeasibleOrder,
        };
    }
    let feasible = Some((rank_profile[0].0, rank_profile.last().unwrap().0));
    let max_rank = rank_profile.iter().map(|&(_, r)| r).max().unwrap();
    for (idx, &(m, rank)) in rank_profile.iter().enumerate() {
        if rank != max_rank {
            continue;
        }
        if let Some(solution) = solve_invertible(&systems[idx]) {
            let n_c = systems[idx].n_columns();
            return PciReport {
                d,
                allow_constant,
                order: Some(m),
                feasible,
                rank_profile,
                n_c: Some(n_c),
                solution: Some(solution),
                status: PciStatus::Found,
            };
        }
    }
    PciReport {
        d,
        allow_constant,
        order: None,
        feasible,
        rank_profile,
        n_c: None,
        solution: None,
        status: PciStatus::NoInvertibleSolution,
    }
}

pub fn pci_scalar(s: &BitSequence, d: usize, allow_constant: bool) -> PciReport {
    pci(&VectorSequence::from(s), d, allow_constant)
}

/// Linear-complexity inversion result.
#[derive(Clone, Debug)]
pub struct LcInverse {
    pub order: usize,
    pub polynomial: Polynomial,
    pub inverse: bool,
}

/// Degree-1 inversion: runs [`pci`] at `d = 1`. The returned polynomial has
/// the `x0` coefficient fixed to 1 by the prefix constraint, so the inverse
/// is `s_{m-1} + sum b_i s_{i-1}`.
pub fn lc_inverse(s: &BitSequence) -> Option<LcInverse> {
    let report = pci_scalar(s, 1, false);
    let order = report.order?;
    let solution = report.solution?;
    Some(LcInverse {
        order,
        polynomial: solution.polynomial.clone(),
        inverse: solution.inverse.get(0),
    })
}

/// Classical Berlekamp-Massey over GF(2): the length of the shortest LFSR
/// generating the sequence.
pub fn berlekamp_massey(s: &BitSequence) -> usize {
    let n = s.len();
    let mut c = vec![false; n + 1];
    let mut b = vec![false; n + 1];
    c[0] = true;
    b[0] = true;
    let mut l = 0usize;
    let mut m = 1usize; // steps since last length change
    for t in 0..n {
        let mut delta = s.get(t);
        for i in 1..=l {
            delta ^= c[i] && s.get(t - i);
        }
        if !delta {
            m += 1;
        } else if 2 * l <= t {
            let old_c = c.clone();
            for i in 0..=n - m {
                c[i + m] ^= b[i];
            }
            l = t + 1 - l;
            b = old_c;
            m = 1;
        } else {
            for i in 0..=n - m {
                c[i + m] ^= b[i];
            }
            m += 1;
        }
    }
    l
}

/// Maximal order complexity: the smallest window length `m >= 1` such that
/// no two equal length-`m` windows of `s` are followed by different symbols.
///
/// A single window cannot conflict, so the scan always terminates by
/// `m = M - 1`.
pub fn moc(s: &BitSequence) -> Result<usize> {
    let len = s.len();
    if len < 2 {
        return Err(Error::SequenceTooShort { len, min: 2 });
    }
    for m in 1..len {
        if window_map_is_function(s, m) {
            return Ok(m);
        }
    }
    unreachable!("a single window at m = M - 1 is always consistent")
}

fn window_map_is_function(s: &BitSequence, m: usize) -> bool {
    let len = s.len();
    if m <= 64 {
        // rolling packed windows
        let mut seen: HashMap<u64, bool> = HashMap::new();
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut key = 0u64;
        for t in 0..m {
            key |= (s.get(t) as u64) << t;
        }
        for j in 0..len - m {
            let next = s.get(m + j);
            if let Some(&prev) = seen.get(&key) {
                if prev != next {
                    return false;
                }
            } else {
                seen.insert(key, next);
            }
            // slide: drop s_j, append s_{m+j} at the top
            key = (key >> 1) | ((next as u64) << (m - 1));
            key &= mask;
        }
        true
    } else {
        let mut seen: HashMap<String, bool> = HashMap::new();
        for j in 0..len - m {
            let key = s.window(j, m).to_bit_string();
            let next = s.get(m + j);
            if let Some(&prev) = seen.get(&key) {
                if prev != next {
                    return false;
                }
            } else {
                seen.insert(key, next);
            }
        }
        true
    }
}

/// Inversion complexity of a sequence relative to a fixed monomial set:
/// `sqrt(r * m)` with `r` the recurrence-matrix rank and `m` the set order.
/// Undefined when the augmented system has no solution.
#[derive(Clone, Debug)]
pub struct MsetComplexity {
    pub order: usize,
    pub rank: usize,
    pub defined: bool,
}

impl MsetComplexity {
    pub fn value(&self) -> Option<f64> {
        self.defined.then(|| ((self.rank * self.order) as f64).sqrt())
    }
}

pub fn complexity_relative(seq: &VectorSequence, mset: &MonomialSet) -> Result<MsetComplexity> {
    let sys = build_system_custom(seq, mset)?;
    let rank = sys.rr_matrix().rank();
    let defined = crate::inversion::inverse_exists(&sys);
    Ok(MsetComplexity {
        order: mset.order(),
        rank,
        defined,
    })
}
