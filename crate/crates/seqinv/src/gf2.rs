//! Bit-packed vectors and matrices over GF(2).
//!
//! Rows are packed into `u64` words so that row operations are word-wise
//! XORs. Everything downstream (Hankel systems, rank tests, kernel
//! enumeration) runs on top of this module.
//!
//! Values are immutable once built by their producers; all solver entry
//! points take `&self` and return fresh values, so concurrent read-only
//! sharing is safe.

use crate::error::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector of bits over GF(2).
///
/// Invariant: pad bits beyond `len` in the last word are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `'0'`/`'1'` characters, leftmost character first
    /// (bit 0). Whitespace is ignored.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
            }
        }
        if bits.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        Ok(BitVec::from_bools(&bits))
    }

    /// Low `len` bits of `value`, bit 0 = least significant.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.words[0] = value & mask_low(len);
        }
        v
    }

    /// Packs the bits back into a `u64` (bit i -> 2^i). Requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64);
        if self.len == 0 {
            0
        } else {
            self.words[0]
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        let w = i / WORD_BITS;
        let b = i % WORD_BITS;
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// GF(2) inner product: parity of the AND of the two vectors.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Concatenates `self` followed by `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for (i, b) in self.iter().enumerate() {
            if b {
                out.set(i, true);
            }
        }
        for (i, b) in other.iter().enumerate() {
            if b {
                out.set(self.len + i, true);
            }
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        assert!(start <= end && end <= self.len, "slice out of range");
        let mut out = BitVec::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    fn clear_pad(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= mask_low(rem);
            }
        }
    }
}

#[inline]
fn mask_low(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

/// A dense matrix over GF(2), rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

/// Result of reduced row echelon form with transform tracking:
/// `transform * original = echelon`, `transform` invertible,
/// `pivots[i]` = pivot column of echelon row `i`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub echelon: BitMatrix,
    pub transform: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.set_row(i, r);
        }
        m
    }

    /// Builds an `rows x cols` matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.words[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let idx = r * self.stride + c / WORD_BITS;
        let b = c % WORD_BITS;
        if value {
            self.words[idx] |= 1 << b;
        } else {
            self.words[idx] &= !(1 << b);
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        assert!(r < self.rows, "row {r} out of range");
        let mut v = BitVec {
            words: self.words[r * self.stride..(r + 1) * self.stride].to_vec(),
            len: self.cols,
        };
        v.clear_pad();
        v
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert!(r < self.rows, "row {r} out of range");
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.words[r * self.stride..(r + 1) * self.stride].copy_from_slice(&v.words);
    }

    #[inline]
    fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.stride, source * self.stride);
        if t == s {
            return;
        }
        for k in 0..self.stride {
            let w = self.words[s + k];
            self.words[t + k] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let base = r * self.stride;
            let mut acc = 0u64;
            for k in 0..self.stride {
                acc ^= self.words[base + k] & v.words[k];
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product over GF(2): accumulates rows of `other` selected by
    /// the set bits of each row of `self`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (t, s) = (r * out.stride, c * other.stride);
                    for k in 0..out.stride {
                        out.words[t + k] ^= other.words[s + k];
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices vertically. All arguments must share a column count.
    pub fn vstack(blocks: &[&BitMatrix]) -> BitMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "column mismatch in vstack");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut at = 0;
        for b in blocks {
            out.words[at * out.stride..(at + b.rows) * out.stride].copy_from_slice(&b.words);
            at += b.rows;
        }
        out
    }

    /// Concatenates matrices horizontally. All arguments must share a row count.
    pub fn hstack(blocks: &[&BitMatrix]) -> BitMatrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "row mismatch in hstack");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            let mut at = 0;
            for b in blocks {
                for c in 0..b.cols {
                    if b.get(r, c) {
                        out.set(r, at + c, true);
                    }
                }
                at += b.cols;
            }
        }
        out
    }

    /// Appends `rhs` as an extra column (for augmented-rank tests).
    pub fn with_column(&self, rhs: &BitVec) -> BitMatrix {
        assert_eq!(rhs.len(), self.rows, "column length mismatch");
        let mut out = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            if rhs.get(r) {
                out.set(r, self.cols, true);
            }
        }
        out
    }

    /// New matrix keeping only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.set_row(i, &self.row(r));
        }
        out
    }

    /// Gauss-Jordan elimination on columns `[0, col_limit)`, tracking the
    /// accumulated row transform. Pivot rows end up on top in pivot-column
    /// order; rows below have zeros across the eliminated column range.
    fn eliminate(&self, col_limit: usize) -> Echelon {
        let mut ech = self.clone();
        let mut transform = BitMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..col_limit.min(self.cols) {
            let Some(pivot) = (next_row..self.rows).find(|&r| ech.get(r, c)) else {
                continue;
            };
            ech.swap_rows(next_row, pivot);
            transform.swap_rows(next_row, pivot);
            for r in 0..self.rows {
                if r != next_row && ech.get(r, c) {
                    ech.xor_rows(r, next_row);
                    transform.xor_rows(r, next_row);
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        Echelon {
            echelon: ech,
            transform,
            pivots,
        }
    }

    /// Reduced row echelon form with the invertible transform satisfying
    /// `transform * self = echelon`.
    pub fn rref_with_transform(&self) -> Echelon {
        self.eliminate(self.cols)
    }

    /// Like [`rref_with_transform`](Self::rref_with_transform) but pivots are
    /// searched only in the first `col_limit` columns. Used to zero out a
    /// leading block of columns while leaving the rest untouched.
    pub fn rref_on_columns(&self, col_limit: usize) -> Echelon {
        self.eliminate(col_limit)
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        // Same elimination without the transform bookkeeping.
        let mut ech = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| ech.get(r, c)) else {
                continue;
            };
            ech.swap_rows(rank, pivot);
            for r in rank + 1..self.rows {
                if ech.get(r, c) {
                    ech.xor_rows(r, rank);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Canonical particular solution of `self * x = rhs`: free variables are
    /// zero under RREF. Returns `None` when the system is inconsistent.
    ///
    /// # Panics
    ///
    /// Panics if `rhs.len() != self.rows()`.
    pub fn solve(&self, rhs: &BitVec) -> Option<BitVec> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch in solve");
        let ech = self.rref_with_transform();
        let t = ech.transform.mul_vec(rhs);
        for r in ech.pivots.len()..self.rows {
            if t.get(r) {
                return None;
            }
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            if t.get(r) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Basis of the right kernel, ordered by free-column index ascending.
    /// The basis size equals `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let ech = self.rref_with_transform();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - ech.pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in ech.pivots.iter().enumerate() {
                if ech.echelon.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Parses rows like `"101;010"` or newline-separated bit strings.
impl std::str::FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<BitVec> = s
            .split([';', '\n'])
            .filter(|line| !line.trim().is_empty())
            .map(BitVec::from_bit_str)
            .collect::<Result<_>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(BitMatrix::from_rows(&rows))
    }
}
