//! Residual codes and the block scaffold built from them.
//!
//! If `C` has a minimum-weight word `c` of weight `d`, a generator matrix of
//! `C` can be written with `c` as the top row and the restriction of the
//! remaining rows to the zero coordinates of `c` (the residual) on the left:
//!
//! ```text
//!     [ 0 .. 0   1 | 1 .. 1 ]
//!     [ resG     0 |   X    ]
//! ```
//!
//! The left block `A` is fixed by the residual; the `d - 1` columns on the
//! right are what the proper-set search fills in.

use crate::error::{Error, Result};
use crate::gf2::{low_mask, BitMatrix, BitVector};

/// Generator matrix of the restriction of the code spanned by `g` to the zero
/// coordinates of the codeword `c`, with coordinates kept in their original
/// order. The result has full row rank, which is `k - 1` whenever `c` has
/// weight below twice the minimum distance.
pub fn residual_code(g: &BitMatrix, c: &BitVector) -> Result<BitMatrix> {
    if c.len() != g.cols() {
        return Err(Error::ColumnLength { expected: g.cols(), got: c.len() });
    }
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    if !g.contains_word(c.bits())? {
        return Err(Error::NotACodeword);
    }
    let zeros: Vec<usize> = (0..g.cols()).filter(|&j| !c.get(j)).collect();
    Ok(g.select_columns(&zeros).rref().matrix)
}

/// The left block `A` of the layout above for a residual generator `res_g`.
///
/// `A` has one more row and one more column than `res_g`: each residual column
/// gains a zero top entry, and the last column is `(1, 0, .., 0)`.
pub fn scaffold(res_g: &BitMatrix, d: usize) -> BitMatrix {
    assert!(d >= 1, "a minimum-weight word has positive weight");
    let rows = res_g.rows() + 1;
    let mut cols: Vec<u64> = res_g.columns().iter().map(|&c| c << 1).collect();
    cols.push(1);
    BitMatrix::from_columns(rows, cols).expect("scaffold fits in a word")
}

/// Rewrites the basis of `res_g` so that its rows sum to the all-ones word,
/// if the all-ones word is in the code. Every column then has odd weight.
pub fn rebase_to_all_ones(res_g: &BitMatrix) -> Result<Option<BitMatrix>> {
    let n = res_g.cols();
    let k = res_g.rows();
    if n == 0 || k == 0 {
        return Ok(None);
    }
    let ones = low_mask(n);
    if !res_g.contains_word(ones)? {
        return Ok(None);
    }
    // Put the all-ones word first in a basis, then fold the others into it so
    // the basis still spans the same space and its sum is all-ones.
    let mut rows = vec![ones];
    for r in res_g.packed_rows()? {
        let candidate = BitMatrix::from_rows(n, &[rows.as_slice(), &[r]].concat())?;
        if candidate.rank() == rows.len() + 1 {
            rows.push(r);
        }
        if rows.len() == k {
            break;
        }
    }
    let tail: u64 = rows[1..].iter().fold(0, |a, &r| a ^ r);
    rows[0] ^= tail;
    BitMatrix::from_rows(n, &rows).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics;

    #[test]
    fn repetition_residual_is_empty() {
        let g = BitMatrix::from_rows(5, &[0b11111]).unwrap();
        let r = residual_code(&g, &BitVector::ones(5)).unwrap();
        assert_eq!((r.rows(), r.cols()), (0, 0));
    }

    #[test]
    fn hamming_weight_three_residual() {
        let g = crate::fixtures::hamming74();
        let c = BitVector::new(7, g.row(0)).unwrap();
        assert_eq!(c.weight(), 3);
        let r = residual_code(&g, &c).unwrap();
        assert_eq!((r.rows(), r.cols()), (3, 4));
        assert!(metrics::min_distance(&r).unwrap() >= 2);
    }

    #[test]
    fn residual_rejects_non_codewords() {
        let g = crate::fixtures::hamming74();
        assert!(matches!(residual_code(&g, &BitVector::new(7, 1).unwrap()), Err(Error::NotACodeword)));
        assert!(matches!(residual_code(&g, &BitVector::zeros(7)), Err(Error::ZeroCode)));
    }

    #[test]
    fn scaffold_layout() {
        let res = BitMatrix::parse("1100\n0011\n").unwrap();
        let a = scaffold(&res, 3);
        assert_eq!(a.to_text(), "00001\n11000\n00110\n");
        let single = scaffold(&BitMatrix::zeros(0, 0), 1);
        assert_eq!(single.to_text(), "1\n");
    }

    #[test]
    fn rebasing_sums_to_all_ones() {
        let res = BitMatrix::parse("1100\n0011\n").unwrap();
        let r = rebase_to_all_ones(&res).unwrap().unwrap();
        assert_eq!(r.rref(), res.rref());
        assert!(r.columns().iter().all(|c| c.count_ones() % 2 == 1));
        assert!(rebase_to_all_ones(&BitMatrix::parse("1100\n0010\n").unwrap()).unwrap().is_none());
    }
}
