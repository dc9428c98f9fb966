//! Solving for associated polynomials and inverses.
//!
//! An associated polynomial of a sequence satisfies every recurrence row of
//! its [`HankelSystem`]. Appending the prefix-constraint rows `<vh, a> = 1`
//! (one per coordinate) restricts to polynomials that determine a unique
//! prefix element; for any such solution the inverse of coordinate `i` is
//! `s_{m-1}(i) + <vg(i), b>`. Solution families are affine: a canonical
//! particular solution plus the kernel of the system.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::hankel::HankelSystem;
use crate::monomial::Polynomial;

/// Split coefficient pair `(a, b)` of a polynomial `f = x0*h + g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficients {
    pub a: BitVec,
    pub b: BitVec,
}

impl Coefficients {
    pub fn stacked(&self) -> BitVec {
        self.a.concat(&self.b)
    }
}

/// The affine family of coefficient solutions of one system.
///
/// `particular` is the canonical solution (free variables zero under RREF);
/// `kernel` spans the homogeneous solutions. `constrained` records whether
/// the prefix-constraint rows were part of the system.
#[derive(Clone, Debug)]
pub struct AssociatedFamily {
    pub particular: Option<Coefficients>,
    pub kernel: Vec<Coefficients>,
    pub constrained: bool,
}

impl AssociatedFamily {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// log2 of the family size.
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }
}

/// A solution count of the form `2^k`, saturating at `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionCount {
    pub value: u64,
    pub saturated: bool,
}

impl SolutionCount {
    pub fn pow2(exp: usize) -> Self {
        if exp < 64 {
            SolutionCount {
                value: 1u64 << exp,
                saturated: false,
            }
        } else {
            SolutionCount {
                value: u64::MAX,
                saturated: true,
            }
        }
    }

    pub fn one() -> Self {
        SolutionCount {
            value: 1,
            saturated: false,
        }
    }
}

/// Result of a successful invertibility solve.
#[derive(Clone, Debug)]
pub struct InversionSolution {
    /// One inverse bit per coordinate.
    pub inverse: BitVec,
    /// Canonical representative coefficients.
    pub coefficients: Coefficients,
    /// Canonical representative as a polynomial.
    pub polynomial: Polynomial,
    /// The constrained solution family.
    pub family: AssociatedFamily,
    /// Whether every family member yields the same inverse.
    pub common_inverse: bool,
    pub count_lower: SolutionCount,
    pub count_upper: SolutionCount,
}

/// Block decomposition obtained by eliminating the `a` columns of the
/// augmented system: `transform * [[H1 H2],[Vh 0]] = [[H11 H12],[0 H22]]`
/// with `H11` of full row rank, and `transform * (rhs, 1) = (s1, s2)`.
#[derive(Clone, Debug)]
pub struct ProjectionDecomposition {
    pub h11: BitMatrix,
    pub h12: BitMatrix,
    pub h22: BitMatrix,
    pub s1: BitVec,
    pub s2: BitVec,
    pub transform: BitMatrix,
}

fn solve_family(sys: &HankelSystem, matrix: &BitMatrix, rhs: &BitVec, constrained: bool) -> AssociatedFamily {
    let particular = matrix.solve(rhs).map(|x| {
        let (a, b) = sys.split_coefficients(&x);
        Coefficients { a, b }
    });
    let kernel = if particular.is_some() {
        matrix
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let (a, b) = sys.split_coefficients(&v);
                Coefficients { a, b }
            })
            .collect()
    } else {
        Vec::new()
    };
    AssociatedFamily {
        particular,
        kernel,
        constrained,
    }
}

/// Solves the recurrence rows alone (no prefix constraint). Inconsistency is
/// reported through an absent `particular`, not an error.
pub fn solve_associated(sys: &HankelSystem) -> AssociatedFamily {
    solve_family(sys, &sys.rr_matrix(), &sys.rhs, false)
}

/// Inverse of coordinate `i` under coefficients `b`:
/// `s_{m-1}(i) + <vg(i), b>`.
pub fn inverse_from(sys: &HankelSystem, b: &BitVec) -> BitVec {
    let mut inv = sys.base.clone();
    inv.xor_assign(&sys.vg.mul_vec(b));
    inv
}

/// Solves the augmented system (recurrences plus the prefix-constraint rows)
/// and packages the inverse, the family, the common-inverse flag, and the
/// counting bounds. `None` means no associated polynomial with a unique
/// inverse exists in this basis.
pub fn solve_invertible(sys: &HankelSystem) -> Option<InversionSolution> {
    let family = solve_family(sys, &sys.augmented_matrix(), &sys.augmented_rhs(), true);
    let coefficients = family.particular.clone()?;
    let inverse = inverse_from(sys, &coefficients.b);
    // The inverse is common across the family iff no kernel direction moves
    // any coordinate's <vg, b>.
    let common_inverse = family
        .kernel
        .iter()
        .all(|dir| sys.vg.mul_vec(&dir.b).is_zero());
    let (count_lower, count_upper) = family_bounds(sys);
    let polynomial = sys
        .meta
        .basis
        .polynomial(sys.meta.m, &coefficients.a, &coefficients.b);
    Some(InversionSolution {
        inverse,
        coefficients,
        polynomial,
        family,
        common_inverse,
        count_lower,
        count_upper,
    })
}

/// Bounds on the number of associated polynomials with an inverse:
/// `2^{n_C - (r + n)} <= count <= 2^{n_C - r}` where `r` is the rank of the
/// recurrence matrix and `n` prefix-constraint rows were appended (`n = 1`
/// for a scalar sequence).
fn family_bounds(sys: &HankelSystem) -> (SolutionCount, SolutionCount) {
    let n_c = sys.n_columns();
    let r = sys.rr_matrix().rank();
    let upper = SolutionCount::pow2(n_c.saturating_sub(r));
    let low_exp = n_c.saturating_sub(r + sys.meta.n);
    let lower = SolutionCount::pow2(low_exp);
    (lower, upper)
}

/// Counting bounds for the family of invertible associated polynomials.
///
/// Errors with [`Error::NoInverse`] when the augmented system is
/// inconsistent.
pub fn count_bounds(sys: &HankelSystem) -> Result<(SolutionCount, SolutionCount)> {
    if !inverse_exists(sys) {
        return Err(Error::NoInverse);
    }
    Ok(family_bounds(sys))
}

/// Eliminates the `a` columns of the augmented system, yielding the
/// projection of the solution set onto the `b` coefficients: solutions of
/// `h22 * b = s2` are exactly the `b` parts of augmented-system solutions.
pub fn project(sys: &HankelSystem) -> ProjectionDecomposition {
    let aug = sys.augmented_matrix();
    let rhs = sys.augmented_rhs();
    let a_cols = sys.h1.cols();
    let ech = aug.rref_on_columns(a_cols);
    let k = ech.pivots.len();
    let rows = aug.rows();
    let top: Vec<usize> = (0..k).collect();
    let bottom: Vec<usize> = (k..rows).collect();
    let a_idx: Vec<usize> = (0..a_cols).collect();
    let b_idx: Vec<usize> = (a_cols..sys.n_columns()).collect();
    let reduced = &ech.echelon;
    let h11 = reduced.select_rows(&top).select_columns(&a_idx);
    let h12 = reduced.select_rows(&top).select_columns(&b_idx);
    let h22 = reduced.select_rows(&bottom).select_columns(&b_idx);
    let t_rhs = ech.transform.mul_vec(&rhs);
    let s1 = t_rhs.slice(0, k);
    let s2 = t_rhs.slice(k, rows);
    ProjectionDecomposition {
        h11,
        h12,
        h22,
        s1,
        s2,
        transform: ech.transform,
    }
}

/// Existence test for an associated polynomial with a unique inverse:
/// `rank h22 == rank [h22 | s2]` in the projection decomposition. Agrees
/// with `solve_invertible(sys).is_some()`.
pub fn inverse_exists(sys: &HankelSystem) -> bool {
    let proj = project(sys);
    proj.h22.rank() == proj.h22.with_column(&proj.s2).rank()
}

/// True iff all invertible associated polynomials yield the same inverse:
/// every `vg` row lies in the row span of `h22`.
///
/// Errors with [`Error::NoInverse`] when no inverse exists at all.
pub fn common_inverse_check(sys: &HankelSystem) -> Result<bool> {
    let proj = project(sys);
    let r = proj.h22.rank();
    if r != proj.h22.with_column(&proj.s2).rank() {
        return Err(Error::NoInverse);
    }
    let stacked = BitMatrix::vstack(&[&proj.h22, &sys.vg]);
    Ok(stacked.rank() == r)
}

/// One enumerated family member: coefficients plus the inverse vector its
/// `b` part induces (meaningful as a sequence inverse only for constrained
/// families).
pub type FamilyMember = (Coefficients, BitVec);

/// Result of enumerating a solution family up to a cap.
#[derive(Clone, Debug)]
pub struct FamilyEnumeration {
    pub members: Vec<FamilyMember>,
    pub truncated: bool,
}

pub const DEFAULT_ENUMERATION_LIMIT: usize = 1 << 20;

/// Enumerates `particular + span(kernel)` in deterministic order: member `k`
/// XORs in the kernel vectors selected by the binary digits of `k`. Stops at
/// `limit` members and flags truncation.
///
/// # Panics
///
/// Panics if the family has no particular solution.
pub fn enumerate_family(sys: &HankelSystem, fam: &AssociatedFamily, limit: usize) -> FamilyEnumeration {
    let particular = fam
        .particular
        .as_ref()
        .expect("cannot enumerate an inconsistent family");
    let dim = fam.kernel.len();
    let total: Option<usize> = 1usize.checked_shl(dim.min(63) as u32);
    let count = match total {
        Some(t) if dim < 63 => t.min(limit),
        _ => limit,
    };
    let truncated = match total {
        Some(t) if dim < 63 => t > limit,
        _ => true,
    };
    let mut members = Vec::with_capacity(count);
    for k in 0..count {
        let mut a = particular.a.clone();
        let mut b = particular.b.clone();
        for (i, dir) in fam.kernel.iter().enumerate() {
            if (k >> i) & 1 == 1 {
                a.xor_assign(&dir.a);
                b.xor_assign(&dir.b);
            }
        }
        let coeffs = Coefficients { a, b };
        let inverse = inverse_from(sys, &coeffs.b);
        members.push((coeffs, inverse));
    }
    FamilyEnumeration { members, truncated }
}
