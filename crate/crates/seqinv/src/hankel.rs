//! Construction of recurrence systems from sequences.
//!
//! For a sequence window `(s_j, ..., s_{j+m-1})` and a polynomial in the
//! split form `f = x0*h + g`, the recurrence `s_{m+j} = f(window)` is linear
//! in the coefficients: row `j` of `h1` holds `s_j * mu(window)` for each
//! h-basis monomial `mu`, row `j` of `h2` holds `nu(window)` for each g-basis
//! monomial `nu`, and the right-hand side is `s_{m+j}`. Rows run
//! `j = 0..M-m-1`. Vector sequences stack one block per coordinate.
//!
//! `vh`/`vg` evaluate the same bases on the initial window
//! `(s_0, ..., s_{m-2})` (variable `x_i` reads `s_{i-1}`); they express the
//! prefix constraint and the inverse formula. The bare-`x0` column
//! contributes the constant 1 to `vh` since the prospective prefix element
//! multiplies it.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::monomial::{enumerate_basis, BasisSplit, Monomial, Polynomial};

/// A scalar binary sequence `s_0, ..., s_{M-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSequence {
    bits: BitVec,
}

impl BitSequence {
    /// # Panics
    ///
    /// Panics on an empty vector.
    pub fn new(bits: BitVec) -> Self {
        assert!(!bits.is_empty(), "sequence must have at least one element");
        BitSequence { bits }
    }

    pub fn from_bit_str(s: &str) -> Result<Self> {
        Ok(BitSequence::new(BitVec::from_bit_str(s)?))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitSequence::new(BitVec::from_bools(bits))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    /// Window `(s_j, ..., s_{j+m-1})`.
    ///
    /// # Panics
    ///
    /// Panics if `j + m` exceeds the sequence length.
    pub fn window(&self, j: usize, m: usize) -> BitVec {
        assert!(j + m <= self.len(), "window [{j}, {j}+{m}) out of range");
        self.bits.slice(j, j + m)
    }

    pub fn prefix(&self, len: usize) -> BitSequence {
        assert!(len >= 1 && len <= self.len());
        BitSequence::new(self.bits.slice(0, len))
    }
}

/// A vector sequence: `n` coordinate sequences of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSequence {
    coords: Vec<BitSequence>,
}

impl VectorSequence {
    /// # Panics
    ///
    /// Panics if no coordinates are given or lengths differ.
    pub fn new(coords: Vec<BitSequence>) -> Self {
        assert!(!coords.is_empty(), "vector sequence needs at least one coordinate");
        let len = coords[0].len();
        assert!(
            coords.iter().all(|c| c.len() == len),
            "coordinate sequences must have equal length"
        );
        VectorSequence { coords }
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn len(&self) -> usize {
        self.coords[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coord(&self, i: usize) -> &BitSequence {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[BitSequence] {
        &self.coords
    }

    /// Element `t` as an `n`-bit state (bit `i` = coordinate `i`).
    pub fn element(&self, t: usize) -> BitVec {
        BitVec::from_bools(&self.coords.iter().map(|c| c.get(t)).collect::<Vec<_>>())
    }

    pub fn prefix(&self, len: usize) -> VectorSequence {
        VectorSequence::new(self.coords.iter().map(|c| c.prefix(len)).collect())
    }
}

impl From<BitSequence> for VectorSequence {
    fn from(s: BitSequence) -> Self {
        VectorSequence::new(vec![s])
    }
}

impl From<&BitSequence> for VectorSequence {
    fn from(s: &BitSequence) -> Self {
        VectorSequence::new(vec![s.clone()])
    }
}

/// An ordered, duplicate-free set of monomials over `x0..x_{m-1}` selecting
/// the columns of a custom recurrence system. The order `m` is
/// `1 + max variable index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    monomials: Vec<Monomial>,
    order: usize,
    /// h-part: `x0`-multiples with the `x0` factor stripped, in set order.
    h_reduced: Vec<Monomial>,
    /// g-part: monomials not involving `x0`, in set order.
    g_part: Vec<Monomial>,
}

impl MonomialSet {
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::Parse("empty monomial set".into()));
        }
        for (i, a) in monomials.iter().enumerate() {
            for b in &monomials[i + 1..] {
                if a == b {
                    return Err(Error::Parse(format!("duplicate monomial {a}")));
                }
            }
        }
        let order = 1 + monomials
            .iter()
            .filter_map(Monomial::max_var)
            .max()
            .unwrap_or(0);
        let mut h_reduced = Vec::new();
        let mut g_part = Vec::new();
        for m in &monomials {
            match m.without_x0() {
                Some(reduced) => h_reduced.push(reduced),
                None => g_part.push(m.clone()),
            }
        }
        Ok(MonomialSet {
            monomials,
            order,
            h_reduced,
            g_part,
        })
    }

    /// Parses an ANF-style list, e.g. `"x0*x1 + x0*x2 + x1*x2 + x2*x3"`.
    /// Text order is preserved as column order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut monomials = Vec::new();
        for raw in text.split('+') {
            let p = Polynomial::parse_anf(raw.trim(), usize::MAX >> 1)?;
            let mut terms: Vec<Monomial> = p.terms().cloned().collect();
            if terms.len() != 1 {
                return Err(Error::Parse(format!("expected a single monomial, got {raw:?}")));
            }
            monomials.push(terms.pop().unwrap());
        }
        MonomialSet::new(monomials)
    }

    /// The complete basis of order `m` and degree `d` as a monomial set;
    /// yields a system identical to [`build_system`].
    pub fn full_basis(m: usize, d: usize, allow_constant: bool) -> Result<Self> {
        let split = enumerate_basis(m, d, allow_constant)?;
        let mut monomials: Vec<Monomial> = split.h_basis.iter().map(Monomial::times_x0).collect();
        monomials.extend(split.g_basis.iter().cloned());
        MonomialSet::new(monomials)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn max_degree(&self) -> usize {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn to_anf_string(&self) -> String {
        self.monomials
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The column basis of a system: either the canonical split of the complete
/// degree-`d` basis, or a caller-chosen monomial set.
#[derive(Clone, Debug)]
pub enum ColumnBasis {
    Split(BasisSplit),
    Custom(MonomialSet),
}

impl ColumnBasis {
    /// Monomials of the `h` block with the `x0` factor stripped.
    pub fn h_monomials(&self) -> &[Monomial] {
        match self {
            ColumnBasis::Split(s) => &s.h_basis,
            ColumnBasis::Custom(ms) => &ms.h_reduced,
        }
    }

    pub fn g_monomials(&self) -> &[Monomial] {
        match self {
            ColumnBasis::Split(s) => &s.g_basis,
            ColumnBasis::Custom(ms) => &ms.g_part,
        }
    }

    /// Assembles the polynomial `x0*h + g` from split coefficients.
    pub fn polynomial(&self, m: usize, a: &BitVec, b: &BitVec) -> Polynomial {
        assert_eq!(a.len(), self.h_monomials().len());
        assert_eq!(b.len(), self.g_monomials().len());
        let mut terms = Vec::new();
        for (i, mono) in self.h_monomials().iter().enumerate() {
            if a.get(i) {
                terms.push(mono.times_x0());
            }
        }
        for (j, mono) in self.g_monomials().iter().enumerate() {
            if b.get(j) {
                terms.push(mono.clone());
            }
        }
        Polynomial::new(m, terms)
    }
}

/// System metadata: order, degree, dimensions, and the column basis.
#[derive(Clone, Debug)]
pub struct SystemMeta {
    pub m: usize,
    pub d: usize,
    /// Number of coordinate sequences.
    pub n: usize,
    /// Length of each coordinate sequence.
    pub seq_len: usize,
    pub allow_constant: bool,
    pub basis: ColumnBasis,
}

/// The recurrence system of one `(m, d, basis)` choice over a sequence:
/// coefficient blocks `[h1 | h2]`, right-hand side, and the initial-window
/// evaluation rows `vh`/`vg` (one row per coordinate).
#[derive(Clone, Debug)]
pub struct HankelSystem {
    pub h1: BitMatrix,
    pub h2: BitMatrix,
    pub rhs: BitVec,
    pub vh: BitMatrix,
    pub vg: BitMatrix,
    /// `s_{m-1}` of each coordinate: the additive base of the inverse formula.
    pub base: BitVec,
    pub meta: SystemMeta,
}

impl HankelSystem {
    /// Number of recurrence rows: `n * (M - m)`.
    pub fn rr_rows(&self) -> usize {
        self.h1.rows()
    }

    /// Total column count of `[h1 | h2]`.
    pub fn n_columns(&self) -> usize {
        self.h1.cols() + self.h2.cols()
    }

    /// The recurrence matrix `[h1 | h2]`.
    pub fn rr_matrix(&self) -> BitMatrix {
        BitMatrix::hstack(&[&self.h1, &self.h2])
    }

    /// The recurrence rows with the prefix-constraint rows `[vh | 0]`
    /// appended (one per coordinate).
    pub fn augmented_matrix(&self) -> BitMatrix {
        let rr = self.rr_matrix();
        let zero = BitMatrix::zeros(self.meta.n, self.h2.cols());
        let constraint = BitMatrix::hstack(&[&self.vh, &zero]);
        BitMatrix::vstack(&[&rr, &constraint])
    }

    /// Right-hand side of the augmented system: the recurrence targets
    /// followed by one `1` per coordinate.
    pub fn augmented_rhs(&self) -> BitVec {
        let mut ones = BitVec::zeros(self.meta.n);
        for i in 0..self.meta.n {
            ones.set(i, true);
        }
        self.rhs.concat(&ones)
    }

    /// Splits a stacked coefficient vector into its `(a, b)` halves.
    pub fn split_coefficients(&self, x: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(x.len(), self.n_columns());
        (x.slice(0, self.h1.cols()), x.slice(self.h1.cols(), x.len()))
    }
}

/// Initial-window view: variable `x_i` (i >= 1) reads `s_{i-1}`. Index 0 is
/// unused and left at zero.
fn inversion_window(s: &BitSequence, m: usize) -> BitVec {
    let mut w = BitVec::zeros(m);
    for i in 1..m {
        if s.get(i - 1) {
            w.set(i, true);
        }
    }
    w
}

fn build_blocks(
    s: &BitSequence,
    m: usize,
    h_monomials: &[Monomial],
    g_monomials: &[Monomial],
) -> (BitMatrix, BitMatrix, BitVec, BitVec, BitVec) {
    let rows = s.len() - m;
    let mut h1 = BitMatrix::zeros(rows, h_monomials.len());
    let mut h2 = BitMatrix::zeros(rows, g_monomials.len());
    let mut rhs = BitVec::zeros(rows);
    for j in 0..rows {
        let window = s.window(j, m);
        let x0 = window.get(0);
        if x0 {
            for (c, mono) in h_monomials.iter().enumerate() {
                if mono.eval(&window) {
                    h1.set(j, c, true);
                }
            }
        }
        for (c, mono) in g_monomials.iter().enumerate() {
            if mono.eval(&window) {
                h2.set(j, c, true);
            }
        }
        if s.get(m + j) {
            rhs.set(j, true);
        }
    }
    let inv = inversion_window(s, m);
    let vh = BitVec::from_bools(&h_monomials.iter().map(|mo| mo.eval(&inv)).collect::<Vec<_>>());
    let vg = BitVec::from_bools(&g_monomials.iter().map(|mo| mo.eval(&inv)).collect::<Vec<_>>());
    (h1, h2, rhs, vh, vg)
}

fn assemble(
    vs: &VectorSequence,
    m: usize,
    d: usize,
    allow_constant: bool,
    basis: ColumnBasis,
) -> Result<HankelSystem> {
    let seq_len = vs.len();
    if seq_len <= m {
        return Err(Error::SequenceTooShort { len: seq_len, min: m + 1 });
    }
    let n = vs.dimension();
    let h_monomials = basis.h_monomials().to_vec();
    let g_monomials = basis.g_monomials().to_vec();
    let mut h1_blocks = Vec::with_capacity(n);
    let mut h2_blocks = Vec::with_capacity(n);
    let mut rhs = BitVec::zeros(0);
    let mut vh = BitMatrix::zeros(n, h_monomials.len());
    let mut vg = BitMatrix::zeros(n, g_monomials.len());
    let mut base = BitVec::zeros(n);
    for (i, coord) in vs.coords().iter().enumerate() {
        let (h1, h2, r, vh_row, vg_row) = build_blocks(coord, m, &h_monomials, &g_monomials);
        h1_blocks.push(h1);
        h2_blocks.push(h2);
        rhs = rhs.concat(&r);
        vh.set_row(i, &vh_row);
        vg.set_row(i, &vg_row);
        if coord.get(m - 1) {
            base.set(i, true);
        }
    }
    let h1 = BitMatrix::vstack(&h1_blocks.iter().collect::<Vec<_>>());
    let h2 = BitMatrix::vstack(&h2_blocks.iter().collect::<Vec<_>>());
    Ok(HankelSystem {
        h1,
        h2,
        rhs,
        vh,
        vg,
        base,
        meta: SystemMeta {
            m,
            d,
            n,
            seq_len,
            allow_constant,
            basis,
        },
    })
}

/// Builds the recurrence system of a scalar sequence for order `m` and
/// degree `d` over the canonical split basis.
pub fn build_system(s: &BitSequence, m: usize, d: usize, allow_constant: bool) -> Result<HankelSystem> {
    build_system_vector(&VectorSequence::from(s), m, d, allow_constant)
}

/// Vector-sequence variant: coordinate blocks stacked in coordinate order,
/// with one `vh`/`vg` row per coordinate.
pub fn build_system_vector(
    vs: &VectorSequence,
    m: usize,
    d: usize,
    allow_constant: bool,
) -> Result<HankelSystem> {
    let split = enumerate_basis(m, d, allow_constant)?;
    assemble(vs, m, d, allow_constant, ColumnBasis::Split(split))
}

/// Builds the recurrence system over a caller-chosen monomial set. Columns
/// keep the set order, partitioned into `x0`-multiples (`h1`) and the rest
/// (`h2`).
pub fn build_system_custom(vs: &VectorSequence, mset: &MonomialSet) -> Result<HankelSystem> {
    let m = mset.order();
    if vs.len() <= m {
        return Err(Error::SequenceTooShort { len: vs.len(), min: m + 1 });
    }
    let d = mset.max_degree();
    let allow_constant = mset.g_part.iter().any(Monomial::is_one);
    assemble(vs, m, d, allow_constant, ColumnBasis::Custom(mset.clone()))
}
