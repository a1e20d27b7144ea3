//! Dense linear algebra over F2.
//!
//! Matrices are stored row-major with rows packed into `u64` words, which
//! keeps elimination, products and rank computations fast at the sizes the
//! compiler works with (up to a few hundred rows). All arithmetic is mod 2;
//! elimination always picks the lowest-index pivot row so every routine is
//! deterministic.

mod factor;
mod poly;

pub use factor::{symmetric_pair_factor, SymmetricPair};

use crate::error::{Error, Result};
use rand_core::{RngCore, SeedableRng};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    let rem = bits % WORD_BITS;
    if rem == 0 {
        u64::MAX
    } else {
        (1u64 << rem) - 1
    }
}

/// Fixed-length bit vector over F2.
///
/// Unused high bits of the final word are kept zero so that equality and
/// popcounts can work word-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    fn mask_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
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
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterate over indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// popcount(a & b), used by the Pauli phase bookkeeping.
pub(crate) fn popcount_and(a: &BitVec, b: &BitVec) -> usize {
    debug_assert_eq!(a.len, b.len);
    a.words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Dense matrix over F2 with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from row-major 0/1 entries; panics on ragged input.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = BitMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let idx = i * self.stride + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// XOR row `src` into row `dst` (`dst += src` over F2).
    pub(crate) fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * self.stride);
            (
                &mut lo[dst * self.stride..(dst + 1) * self.stride],
                &hi[..self.stride],
            )
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * self.stride);
            (
                &mut hi[..self.stride],
                &lo[src * self.stride..(src + 1) * self.stride],
            )
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn row_vec(&self, i: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row(i).to_vec(),
        }
    }

    pub fn col_vec(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn set_row(&mut self, i: usize, v: &BitVec) {
        assert_eq!(v.len, self.cols);
        self.data[i * self.stride..(i + 1) * self.stride].copy_from_slice(&v.words);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise XOR (addition over F2).
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Matrix product mod 2.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (wi, &w) in self.row(i).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let k = wi * WORD_BITS + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let dst = i * out.stride;
                    let src = k * other.stride;
                    for t in 0..other.stride {
                        out.data[dst + t] ^= other.data[src + t];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product mod 2 (`self * v`).
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if self.cols != v.len {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vec {}",
                self.rows, self.cols, v.len
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let dot = self
                .row(i)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>();
            if dot % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (wi, &w) in self.row(i).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let j = wi * WORD_BITS + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Row rank via forward elimination, lowest-index pivots.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let pivot = (rank..work.rows).find(|&r| work.get(r, col));
            if let Some(p) = pivot {
                work.swap_rows(rank, p);
                for r in 0..work.rows {
                    if r != rank && work.get(r, col) {
                        work.xor_rows(r, rank);
                    }
                }
                rank += 1;
                if rank == work.rows {
                    break;
                }
            }
        }
        rank
    }

    /// Inverse over F2; errors if the matrix is singular or non-square.
    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = BitMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| work.get(r, col)).ok_or(Error::Singular)?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for r in 0..n {
                if r != col && work.get(r, col) {
                    work.xor_rows(r, col);
                    inv.xor_rows(r, col);
                }
            }
        }
        Ok(inv)
    }

    /// Inverse transpose, the block that tags along with every CNOT layer.
    pub fn inverse_transpose(&self) -> Result<BitMatrix> {
        Ok(self.inverse()?.transpose())
    }

    pub fn diag(&self) -> BitVec {
        let n = self.rows.min(self.cols);
        let mut v = BitVec::zeros(n);
        for i in 0..n {
            if self.get(i, i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Copy with the diagonal cleared.
    pub fn off_diagonal(&self) -> BitMatrix {
        let mut m = self.clone();
        for i in 0..m.rows.min(m.cols) {
            m.set(i, i, false);
        }
        m
    }

    pub fn from_diag(d: &BitVec) -> BitMatrix {
        let mut m = BitMatrix::zeros(d.len, d.len);
        for i in d.iter_ones() {
            m.set(i, i, true);
        }
        m
    }

    /// Uniformly random matrix from a seeded ChaCha stream.
    pub fn random(rows: usize, cols: usize, rng: &mut impl RngCore) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        let mask = tail_mask(cols);
        for i in 0..rows {
            let base = i * m.stride;
            for w in 0..m.stride {
                m.data[base + w] = rng.next_u64();
            }
            m.data[base + m.stride - 1] &= mask;
        }
        m
    }

    /// Uniformly random element of GL(n, F2), by rejection sampling.
    ///
    /// The acceptance probability is bounded below by ~0.2887 for every n,
    /// so this terminates quickly; the result is deterministic per seed.
    pub fn random_invertible(n: usize, seed: u64) -> BitMatrix {
        assert!(n >= 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let m = BitMatrix::random(n, n, &mut rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Random symmetric matrix (free diagonal) from the given stream.
    pub fn random_symmetric(n: usize, rng: &mut impl RngCore) -> BitMatrix {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                if rng.next_u64() & 1 == 1 {
                    m.set(i, j, true);
                    m.set(j, i, true);
                }
            }
        }
        m
    }

    /// One solution x of `self * x = b` (free variables set to zero), or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(self.rows, b.len);
        let mut work = self.clone();
        let mut rhs = b.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0;
        for col in 0..work.cols {
            if let Some(p) = (rank..work.rows).find(|&r| work.get(r, col)) {
                work.swap_rows(rank, p);
                let tmp = rhs.get(rank);
                rhs.set(rank, rhs.get(p));
                rhs.set(p, tmp);
                for r in 0..work.rows {
                    if r != rank && work.get(r, col) {
                        work.xor_rows(r, rank);
                        if rhs.get(rank) {
                            rhs.flip(r);
                        }
                    }
                }
                pivots.push((rank, col));
                rank += 1;
            }
        }
        for r in rank..work.rows {
            if rhs.get(r) {
                return None;
            }
        }
        let mut x = BitVec::zeros(self.cols);
        for &(r, c) in &pivots {
            if rhs.get(r) {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// Solve `self * X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &BitMatrix) -> Option<BitMatrix> {
        assert_eq!(self.rows, b.rows);
        let mut out = BitMatrix::zeros(self.cols, b.cols);
        for j in 0..b.cols {
            let x = self.solve(&b.col_vec(j))?;
            for i in x.iter_ones() {
                out.set(i, j, true);
            }
        }
        Some(out)
    }

    /// Basis of the right kernel `{x : self * x = 0}`, deterministic order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0;
        for col in 0..work.cols {
            if let Some(p) = (rank..work.rows).find(|&r| work.get(r, col)) {
                work.swap_rows(rank, p);
                for r in 0..work.rows {
                    if r != rank && work.get(r, col) {
                        work.xor_rows(r, rank);
                    }
                }
                pivots.push((rank, col));
                rank += 1;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for &(r, c) in &pivots {
                if work.get(r, free) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Indices of a lexicographically-first maximal independent set of rows.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut echelon: Vec<BitVec> = Vec::new();
        let mut picked = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row_vec(i);
            for e in &echelon {
                let lead = e.iter_ones().next().unwrap();
                if v.get(lead) {
                    v.xor_assign(e);
                }
            }
            if !v.is_zero() {
                echelon.push(v);
                echelon.sort_by_key(|e| e.iter_ones().next().unwrap());
                picked.push(i);
            }
        }
        picked
    }

    /// Horizontal stack of blocks `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    out.set(i, self.cols + j, true);
                }
            }
        }
        out
    }

    /// Assemble the 2x2 block matrix [[a, b], [c, d]].
    pub fn from_blocks(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> BitMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = BitMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        out.paste(a, 0, 0);
        out.paste(b, 0, a.cols);
        out.paste(c, a.rows, 0);
        out.paste(d, a.rows, a.cols);
        out
    }

    pub fn paste(&mut self, block: &BitMatrix, row0: usize, col0: usize) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                if block.get(i, j) {
                    self.set(row0 + i, col0 + j, true);
                }
            }
        }
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if self.get(row0 + i, col0 + j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = false;
                for k in 0..a.cols() {
                    acc ^= a.get(i, k) && b.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    #[test]
    fn mul_identity() {
        let m = BitMatrix::random_invertible(3, 11);
        let id = BitMatrix::identity(3);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn mul_hand_example() {
        let a = BitMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let b = BitMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let expect = BitMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(a.mul(&b).unwrap(), expect);
        assert_eq!(naive_mul(&a, &b), expect);
    }

    #[test]
    fn mul_matches_naive_and_associates() {
        for seed in 0..20u64 {
            let a = BitMatrix::random_invertible(7, seed);
            let b = BitMatrix::random_invertible(7, seed + 100);
            let c = BitMatrix::random_invertible(7, seed + 200);
            assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = BitMatrix::zeros(2, 3);
        let b = BitMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_examples() {
        for n in 1..=5 {
            let id = BitMatrix::identity(n);
            assert_eq!(id.inverse().unwrap(), id);
        }
        let m = BitMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, BitMatrix::from_rows(&[vec![1, 1], vec![1, 0]]));
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(2));
        assert_eq!(inv.mul(&m).unwrap(), BitMatrix::identity(2));
    }

    #[test]
    fn inverse_singular() {
        let m = BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn inverse_involution() {
        for seed in 0..30u64 {
            let m = BitMatrix::random_invertible(9, seed);
            assert_eq!(m.inverse().unwrap().inverse().unwrap(), m);
            assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), BitMatrix::identity(9));
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(6).rank(), 6);
        assert_eq!(BitMatrix::zeros(4, 4).rank(), 0);
        assert_eq!(BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn rank_matches_row_span_count() {
        // |row span| = 2^rank; brute-force over all row combinations.
        for seed in 0..10u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = BitMatrix::random(4, 4, &mut rng);
            let mut span = std::collections::HashSet::new();
            for mask in 0..16u32 {
                let mut v = BitVec::zeros(4);
                for i in 0..4 {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(&m.row_vec(i));
                    }
                }
                span.insert(format!("{v:?}"));
            }
            assert_eq!(1usize << m.rank(), span.len());
        }
    }

    #[test]
    fn random_invertible_n1_and_n2() {
        assert_eq!(
            BitMatrix::random_invertible(1, 99),
            BitMatrix::from_rows(&[vec![1]])
        );
        // every sample lies in GL(2, F2), and all 6 elements show up
        let mut seen = std::collections::HashSet::new();
        for seed in 0..60u64 {
            let m = BitMatrix::random_invertible(2, seed);
            assert_eq!(m.rank(), 2);
            seen.insert(format!("{m:?}"));
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn random_invertible_full_rank_and_deterministic() {
        for n in [1, 2, 5, 17, 33] {
            for seed in 0..4u64 {
                let m = BitMatrix::random_invertible(n, seed);
                assert_eq!(m.rank(), n);
                assert_eq!(m, BitMatrix::random_invertible(n, seed));
            }
        }
    }

    #[test]
    fn transpose_involution() {
        for seed in 0..8u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = BitMatrix::random(5, 9, &mut rng);
            assert_eq!(m.transpose().transpose(), m);
        }
    }

    #[test]
    fn solve_and_kernel() {
        let m = BitMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = BitVec::from_bits(&[1, 0]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1);
        for v in kernel {
            assert!(m.mul_vec(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn independent_rows_lowest_index() {
        let m = BitMatrix::from_rows(&[vec![1, 1], vec![1, 1], vec![0, 1]]);
        assert_eq!(m.independent_rows(), vec![0, 2]);
    }
}
