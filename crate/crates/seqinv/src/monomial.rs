//! Monomials and ANF polynomials over variables `x0..x_{m-1}`.
//!
//! A recurrence polynomial is handled in the split form `f = x0*h + g` where
//! `h` and `g` only involve `x1..x_{m-1}`: the `h` coefficients multiply the
//! prospective prefix element, the `g` coefficients feed the inverse formula.
//! [`enumerate_basis`] produces the canonical column bases for that split.
//!
//! Monomials are ordered by degree first, then lexicographically on the index
//! tuple. The natural divisibility-style order on monomials is only partial
//! (`x1*x4` vs `x2*x3` are incomparable), so this total refinement is what
//! fixes column order deterministically.

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// A product of distinct variables; the empty product is the constant `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Strictly ascending variable indices.
    vars: Vec<usize>,
}

impl Monomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        Monomial { vars: Vec::new() }
    }

    pub fn var(i: usize) -> Self {
        Monomial { vars: vec![i] }
    }

    /// # Panics
    ///
    /// Panics if the indices are not strictly ascending.
    pub fn new(vars: Vec<usize>) -> Self {
        assert!(
            vars.windows(2).all(|w| w[0] < w[1]),
            "monomial indices must be strictly ascending"
        );
        Monomial { vars }
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars.last().copied()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    /// Multiplies by `x0`. The monomial must not already contain `x0`.
    pub fn times_x0(&self) -> Monomial {
        assert!(!self.contains(0), "monomial already contains x0");
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(0);
        vars.extend_from_slice(&self.vars);
        Monomial { vars }
    }

    /// Strips a leading `x0` factor, if present.
    pub fn without_x0(&self) -> Option<Monomial> {
        if self.contains(0) {
            Some(Monomial {
                vars: self.vars[1..].to_vec(),
            })
        } else {
            None
        }
    }

    /// AND of the selected window bits; the empty product evaluates to 1.
    ///
    /// # Panics
    ///
    /// Panics if any variable index is outside the window.
    pub fn eval(&self, window: &BitVec) -> bool {
        self.vars.iter().all(|&i| window.get(i))
    }
}

/// Degree first, then lexicographic on the index tuple.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("1");
        }
        for (k, v) in self.vars.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ANF polynomial: the set of monomials with coefficient 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    order: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    /// # Panics
    ///
    /// Panics if a term uses a variable index `>= order`.
    pub fn new(order: usize, terms: impl IntoIterator<Item = Monomial>) -> Self {
        let terms: BTreeSet<Monomial> = terms.into_iter().collect();
        for t in &terms {
            assert!(
                t.max_var().is_none_or(|v| v < order),
                "monomial {t} uses a variable outside x0..x{}",
                order.saturating_sub(1)
            );
        }
        Polynomial { order, terms }
    }

    pub fn zero(order: usize) -> Self {
        Polynomial {
            order,
            terms: BTreeSet::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains(&Monomial::one())
    }

    /// Zero constant term, i.e. `f(0,...,0) = 0`.
    pub fn is_weakly_homogeneous(&self) -> bool {
        !self.has_constant_term()
    }

    pub fn contains_term(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// XOR of the term evaluations on an `order`-length window.
    ///
    /// # Panics
    ///
    /// Panics if `window.len() != order`.
    pub fn eval(&self, window: &BitVec) -> bool {
        assert_eq!(window.len(), self.order, "window length mismatch");
        let mut acc = false;
        for t in &self.terms {
            acc ^= t.eval(window);
        }
        acc
    }

    /// Selects basis monomials by coefficient bits: the polynomial
    /// `sum_i coeffs[i] * basis[i]` (duplicates cancel over GF(2)).
    ///
    /// # Panics
    ///
    /// Panics if `coeffs.len() != basis.len()`.
    pub fn from_basis(order: usize, basis: &[Monomial], coeffs: &BitVec) -> Self {
        assert_eq!(coeffs.len(), basis.len(), "coefficient length mismatch");
        let mut terms = BTreeSet::new();
        for (i, m) in basis.iter().enumerate() {
            if coeffs.get(i) && !terms.insert(m.clone()) {
                terms.remove(m);
            }
        }
        Polynomial { order, terms }
    }

    /// Canonical ANF text: terms in monomial order with the constant term
    /// printed last (`x0 + 1`, not `1 + x0`); the zero polynomial is `"0"`.
    pub fn to_anf_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| !t.is_one())
            .map(|t| t.to_string())
            .collect();
        if self.has_constant_term() {
            parts.push("1".to_string());
        }
        parts.join(" + ")
    }

    /// Parses ANF text: `poly := term (" + " term)*`,
    /// `term := "1" | var ("*" var)*`, `var := "x" decimal`.
    /// `"0"` alone is accepted for the zero polynomial. Repeated monomials
    /// cancel over GF(2).
    pub fn parse_anf(text: &str, order: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if text == "0" {
            return Ok(Polynomial::zero(order));
        }
        let mut terms = BTreeSet::new();
        for raw in text.split('+') {
            let m = parse_monomial(raw, order)?;
            if !terms.insert(m.clone()) {
                terms.remove(&m);
            }
        }
        Ok(Polynomial { order, terms })
    }
}

fn parse_monomial(raw: &str, order: usize) -> Result<Monomial> {
    let raw = raw.trim();
    if raw == "1" {
        return Ok(Monomial::one());
    }
    let mut vars = Vec::new();
    for tok in raw.split('*') {
        let tok = tok.trim();
        let Some(num) = tok.strip_prefix('x') else {
            return Err(Error::Parse(format!("bad token {tok:?}, expected x<i> or 1")));
        };
        let i: usize = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in {tok:?}")))?;
        if i >= order {
            return Err(Error::Parse(format!(
                "variable x{i} out of range for order {order}"
            )));
        }
        vars.push(i);
    }
    vars.sort_unstable();
    vars.dedup();
    Ok(Monomial::new(vars))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_anf_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[m={}]({})", self.order, self.to_anf_string())
    }
}

/// The canonical column bases of the split `f = x0*h + g` for polynomials of
/// order `m` and degree at most `d`.
///
/// `h_basis` runs over `x1..x_{m-1}` with degree at most `d - 1` (constant
/// included, so that `x0*h` stays within degree `d`); `g_basis` runs over
/// `x1..x_{m-1}` with degree in `1..=d`, preceded by the constant when
/// `allow_constant` is set. Both are in monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSplit {
    pub m: usize,
    pub d: usize,
    pub allow_constant: bool,
    pub h_basis: Vec<Monomial>,
    pub g_basis: Vec<Monomial>,
}

impl BasisSplit {
    pub fn n_columns(&self) -> usize {
        self.h_basis.len() + self.g_basis.len()
    }

    /// Assembles the full polynomial `x0*h + g` from split coefficients.
    ///
    /// # Panics
    ///
    /// Panics on coefficient length mismatch.
    pub fn polynomial(&self, a: &BitVec, b: &BitVec) -> Polynomial {
        assert_eq!(a.len(), self.h_basis.len(), "h coefficient length mismatch");
        assert_eq!(b.len(), self.g_basis.len(), "g coefficient length mismatch");
        let mut terms = Vec::new();
        for (i, mono) in self.h_basis.iter().enumerate() {
            if a.get(i) {
                terms.push(mono.times_x0());
            }
        }
        for (j, mono) in self.g_basis.iter().enumerate() {
            if b.get(j) {
                terms.push(mono.clone());
            }
        }
        Polynomial::new(self.m, terms)
    }

    /// The `g` part alone as a polynomial over `x0..x_{m-1}` (no `x0` terms).
    pub fn g_polynomial(&self, b: &BitVec) -> Polynomial {
        Polynomial::from_basis(self.m, &self.g_basis, b)
    }
}

/// All monomials over the given variables with degree in `deg_lo..=deg_hi`,
/// in monomial order.
fn monomials_over(vars: &[usize], deg_lo: usize, deg_hi: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if deg_lo == 0 {
        out.push(Monomial::one());
    }
    let mut current = Vec::new();
    for d in deg_lo.max(1)..=deg_hi.min(vars.len()) {
        combos(vars, d, 0, &mut current, &mut out);
    }
    out.sort();
    out
}

fn combos(vars: &[usize], want: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Monomial>) {
    if current.len() == want {
        out.push(Monomial::new(current.clone()));
        return;
    }
    let remaining = want - current.len();
    for k in from..=vars.len().saturating_sub(remaining) {
        current.push(vars[k]);
        combos(vars, want, k + 1, current, out);
        current.pop();
    }
}

/// Enumerates the h/g column bases for order `m` and degree `d`.
///
/// Without the constant term the total column count is
/// `sum_{j=1..d} C(m, j)`; `allow_constant` adds one more column.
pub fn enumerate_basis(m: usize, d: usize, allow_constant: bool) -> Result<BasisSplit> {
    if d < 1 || d > m {
        return Err(Error::InvalidDegree { d, m });
    }
    let tail_vars: Vec<usize> = (1..m).collect();
    let h_basis = monomials_over(&tail_vars, 0, d - 1);
    let g_lo = if allow_constant { 0 } else { 1 };
    let g_basis = monomials_over(&tail_vars, g_lo, d);
    Ok(BasisSplit {
        m,
        d,
        allow_constant,
        h_basis,
        g_basis,
    })
}

/// `sum_{j=1..d} C(m, j)`: the number of coefficients of a weakly
/// homogeneous polynomial of order `m` and degree `d`.
pub fn coefficient_count(m: usize, d: usize) -> usize {
    (1..=d.min(m)).map(|j| binomial(m, j)).sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
