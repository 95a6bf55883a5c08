//! Bit-packed linear algebra over GF(2).
//!
//! A [`BitMatrix`] stores its columns, one machine word per column, with bit `i`
//! of a column holding the entry in row `i`. Row operations therefore become
//! loops over the column words, and the column-sum kernels used by code
//! extension are single XORs.

use std::fmt;

use crate::error::{Error, Result};

/// Number of bits in one packed word; bounds both the dimension `k` and,
/// wherever rows are materialised as words, the length `n`.
pub const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn low_mask(bits: usize) -> u64 {
    if bits >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A binary vector of at most [`WORD_BITS`] entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

impl BitVector {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len > WORD_BITS {
            return Err(Error::LengthTooLarge { n: len, max: WORD_BITS });
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::ColumnLength { expected: len, got: 64 - bits.leading_zeros() as usize });
        }
        Ok(Self { len, bits })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len <= WORD_BITS);
        Self { len, bits: 0 }
    }

    pub fn ones(len: usize) -> Self {
        assert!(len <= WORD_BITS);
        Self { len, bits: low_mask(len) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Indices of the set bits in ascending order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| (self.bits >> i) & 1 == 1)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A `k x n` matrix over GF(2) stored column-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Only the nonzero rows are kept, so `matrix.rows() == pivots.len()`.
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    /// Builds a matrix from packed columns of `rows` bits each.
    pub fn from_columns(rows: usize, cols: Vec<u64>) -> Result<Self> {
        if rows > WORD_BITS {
            return Err(Error::DimensionTooLarge { k: rows, max: WORD_BITS });
        }
        let mask = low_mask(rows);
        if let Some(c) = cols.iter().find(|&&c| c & !mask != 0) {
            return Err(Error::ColumnLength { expected: rows, got: 64 - c.leading_zeros() as usize });
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix from packed rows; bit `j` of a row is the entry in column `j`.
    pub fn from_rows(n: usize, rows: &[u64]) -> Result<Self> {
        if n > WORD_BITS {
            return Err(Error::LengthTooLarge { n, max: WORD_BITS });
        }
        if rows.len() > WORD_BITS {
            return Err(Error::DimensionTooLarge { k: rows.len(), max: WORD_BITS });
        }
        let mask = low_mask(n);
        let mut cols = vec![0u64; n];
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::ColumnLength { expected: n, got: 64 - r.leading_zeros() as usize });
            }
            for (j, c) in cols.iter_mut().enumerate() {
                *c |= ((r >> j) & 1) << i;
            }
        }
        Ok(Self { rows: rows.len(), cols })
    }

    pub fn zeros(rows: usize, n: usize) -> Self {
        assert!(rows <= WORD_BITS);
        Self { rows, cols: vec![0; n] }
    }

    pub fn identity(k: usize) -> Self {
        assert!(k <= WORD_BITS);
        Self { rows: k, cols: (0..k).map(|i| 1u64 << i).collect() }
    }

    /// Number of rows (the dimension `k` for a full-rank generator matrix).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns (the code length `n`).
    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> u64 {
        self.cols[j]
    }

    pub fn column_vector(&self, j: usize) -> BitVector {
        BitVector { len: self.rows, bits: self.cols[j] }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.cols[j] >> i) & 1 == 1
    }

    /// Row `i` packed into a word. Requires `n <= 64`.
    pub fn row(&self, i: usize) -> u64 {
        debug_assert!(self.cols.len() <= WORD_BITS);
        self.cols
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &c)| acc | (((c >> i) & 1) << j))
    }

    /// All rows packed into words. Requires `n <= 64`.
    pub fn packed_rows(&self) -> Result<Vec<u64>> {
        if self.cols.len() > WORD_BITS {
            return Err(Error::LengthTooLarge { n: self.cols.len(), max: WORD_BITS });
        }
        let mut out = vec![0u64; self.rows];
        for (j, &c) in self.cols.iter().enumerate() {
            let mut c = c;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                out[i] |= 1u64 << j;
                c &= c - 1;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Result<Self> {
        let rows = self.packed_rows()?;
        Ok(Self { rows: self.cols.len(), cols: rows })
    }

    /// Returns `[self | col]`.
    pub fn with_column(&self, col: u64) -> Self {
        debug_assert_eq!(col & !low_mask(self.rows), 0);
        let mut cols = Vec::with_capacity(self.cols.len() + 1);
        cols.extend_from_slice(&self.cols);
        cols.push(col);
        Self { rows: self.rows, cols }
    }

    /// Returns `[self | extra]`.
    pub fn hconcat(&self, extra: &[u64]) -> Self {
        let mask = low_mask(self.rows);
        debug_assert!(extra.iter().all(|&c| c & !mask == 0));
        let mut cols = self.cols.clone();
        cols.extend_from_slice(extra);
        Self { rows: self.rows, cols }
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self { rows: self.rows, cols: idx.iter().map(|&j| self.cols[j]).collect() }
    }

    /// Moves column `j` to position `target[j]`; `target` must be a permutation.
    pub fn permute_columns(&self, target: &[usize]) -> Self {
        assert_eq!(target.len(), self.cols.len());
        let mut cols = vec![0u64; self.cols.len()];
        for (j, &t) in target.iter().enumerate() {
            cols[t] = self.cols[j];
        }
        Self { rows: self.rows, cols }
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        let mut cols = self.cols.clone();
        eliminate(self.rows, &mut cols).len()
    }

    /// Reduced row echelon form with lowest-index pivot selection.
    pub fn rref(&self) -> Rref {
        let mut cols = self.cols.clone();
        let pivots = eliminate(self.rows, &mut cols);
        Rref { matrix: Self { rows: pivots.len(), cols }, pivots }
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Self> {
        let k = self.rows;
        if self.cols.len() != k {
            return None;
        }
        let mut cols = self.cols.clone();
        cols.extend((0..k).map(|i| 1u64 << i));
        let pivots = eliminate(k, &mut cols);
        if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(Self { rows: k, cols: cols[k..].to_vec() })
    }

    /// Matrix-vector product `self * v`, with `v` packed as `n` bits.
    #[inline]
    pub fn mul_vec(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut b = v;
        while b != 0 {
            out ^= self.cols[b.trailing_zeros() as usize];
            b &= b - 1;
        }
        out
    }

    /// XOR of all columns; bit `i` is the parity of row `i`.
    pub fn row_parities(&self) -> u64 {
        self.cols.iter().fold(0, |a, &c| a ^ c)
    }

    /// A parity-check matrix: `n - k` rows orthogonal to every row of `self`.
    pub fn dual_generator(&self) -> Result<Self> {
        let Rref { matrix, pivots } = self.rref();
        if pivots.len() != self.rows {
            return Err(Error::RankDeficient { rank: pivots.len(), rows: self.rows });
        }
        let n = self.cols.len();
        let r = n - pivots.len();
        if r > WORD_BITS {
            return Err(Error::DimensionTooLarge { k: r, max: WORD_BITS });
        }
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut h = vec![0u64; n];
        for (hrow, q) in (0..n).filter(|&j| !is_pivot[j]).enumerate() {
            h[q] |= 1u64 << hrow;
            let mut c = matrix.cols[q];
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                h[pivots[i]] |= 1u64 << hrow;
                c &= c - 1;
            }
        }
        Ok(Self { rows: r, cols: h })
    }

    /// Whether `word` (packed as a row, bit `j` = coordinate `j`) lies in the row space.
    pub fn contains_word(&self, word: u64) -> Result<bool> {
        let Rref { matrix, pivots } = self.rref();
        let rows = matrix.packed_rows()?;
        let mut w = word;
        for (row, &p) in rows.iter().zip(&pivots) {
            if (w >> p) & 1 == 1 {
                w ^= row;
            }
        }
        Ok(w == 0)
    }

    /// Parses rows of `0`/`1` characters; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut word = 0u64;
            let mut len = 0;
            for ch in line.chars() {
                match ch {
                    '0' | '1' => {
                        if len == WORD_BITS {
                            return Err(Error::Parse {
                                line: lineno + 1,
                                msg: format!("row longer than {WORD_BITS} entries"),
                            });
                        }
                        if ch == '1' {
                            word |= 1u64 << len;
                        }
                        len += 1;
                    }
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(Error::Parse { line: lineno + 1, msg: format!("unexpected character {c:?}") })
                    }
                }
            }
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("row has {len} entries, expected {w}"),
                    })
                }
                _ => {}
            }
            rows.push(word);
        }
        let n = width.unwrap_or(0);
        Self::from_rows(n, &rows).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
    }

    /// Renders rows of `0`/`1` characters, one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols.len() + 1));
        for i in 0..self.rows {
            for c in &self.cols {
                s.push(if (c >> i) & 1 == 1 { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// In-place Gauss-Jordan elimination over packed columns. Returns the pivot
/// columns; rows at or beyond the rank end up zero.
fn eliminate(rows: usize, cols: &mut [u64]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols.len() {
        if r == rows {
            break;
        }
        let below = cols[j] >> r;
        if below == 0 {
            continue;
        }
        let p = r + below.trailing_zeros() as usize;
        if p != r {
            for c in cols.iter_mut() {
                let diff = ((*c >> r) ^ (*c >> p)) & 1;
                *c ^= (diff << r) | (diff << p);
            }
        }
        let mask = cols[j] & !(1u64 << r);
        if mask != 0 {
            for c in cols.iter_mut() {
                if (*c >> r) & 1 == 1 {
                    *c ^= mask;
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming74() -> BitMatrix {
        BitMatrix::parse("1000011\n0100101\n0010110\n0001111\n").unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(BitMatrix::identity(14).rank(), 14);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = BitMatrix::identity(6);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let m = BitMatrix::parse("1101\n1101\n0110\n1011\n").unwrap();
        let r = m.rref();
        assert_eq!(r.matrix.rows(), 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.to_text(), "1011\n0110\n");
    }

    #[test]
    fn dual_of_full_space_is_empty() {
        let h = BitMatrix::identity(5).dual_generator().unwrap();
        assert_eq!(h.rows(), 0);
        assert_eq!(h.cols(), 5);
    }

    #[test]
    fn hamming_dual_is_orthogonal() {
        let g = hamming74();
        let h = g.dual_generator().unwrap();
        assert_eq!(h.rows(), 3);
        assert_eq!(h.rank(), 3);
        let gr = g.packed_rows().unwrap();
        let hr = h.packed_rows().unwrap();
        for a in &gr {
            for b in &hr {
                assert_eq!((a & b).count_ones() % 2, 0);
            }
        }
    }

    #[test]
    fn dual_rejects_rank_deficient() {
        let m = BitMatrix::parse("110\n110\n").unwrap();
        assert!(matches!(m.dual_generator(), Err(Error::RankDeficient { rank: 1, rows: 2 })));
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(BitMatrix::parse("101\n10\n").is_err());
        assert!(BitMatrix::parse("1x1\n").is_err());
    }

    #[test]
    fn contains_word_checks_span() {
        let g = hamming74();
        assert!(g.contains_word(g.row(0) ^ g.row(3)).unwrap());
        assert!(!g.contains_word(1).unwrap());
    }

    #[test]
    fn permute_then_select_roundtrip() {
        let g = hamming74();
        let perm = [3, 0, 6, 1, 5, 2, 4];
        let p = g.permute_columns(&perm);
        for (j, &t) in perm.iter().enumerate() {
            assert_eq!(p.column(t), g.column(j));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::parse("110\n011\n001\n").unwrap();
        let inv = m.inverse().unwrap();
        for j in 0..3 {
            assert_eq!(m.mul_vec(inv.column(j)), 1 << j);
        }
        assert!(BitMatrix::parse("110\n110\n001\n").unwrap().inverse().is_none());
    }

    #[test]
    fn bitvector_guards() {
        assert!(BitVector::new(3, 0b1000).is_err());
        let v = BitVector::new(5, 0b10110).unwrap();
        assert_eq!(v.weight(), 3);
        assert_eq!(v.support().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(v.to_string(), "01101");
    }
}
