//! Equivalence of binary codes under coordinate permutations.
//!
//! A code is relabelled through the incidence structure between its
//! coordinates and a permutation-invariant spanning set of codewords: the
//! codewords of the smallest weights that together span the code. The smaller
//! of the code and its dual is used, since both share their automorphisms and
//! equivalences. The canonical form is the reduced row echelon form of the
//! relabelled code, serialised as hex.

mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, WORD_BITS};
use crate::metrics;

use search::{canonical_labelling, Incidence};

/// Largest dimension of the enumerated side (code or dual) during canonisation.
pub const MAX_CANON_DIM: usize = 24;

/// Deterministic serialisation of the canonical generator matrix.
///
/// Rows are written as lowercase hex, most significant bit first (column 0 is
/// the high bit of the first digit, the last digit zero-padded), and joined
/// with `:`. The zero code is written as `-`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    k: usize,
    text: String,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    fn from_matrix(m: &BitMatrix) -> Self {
        let n = m.cols();
        let k = m.rows();
        if k == 0 {
            return Self { n, k, text: "-".to_string() };
        }
        let digits = n.div_ceil(4);
        let mut text = String::with_capacity(k * (digits + 1));
        for i in 0..k {
            if i > 0 {
                text.push(':');
            }
            for d in 0..digits {
                let mut nib = 0u32;
                for b in 0..4 {
                    let j = 4 * d + b;
                    if j < n && m.get(i, j) {
                        nib |= 8 >> b;
                    }
                }
                text.push(char::from_digit(nib, 16).unwrap());
            }
        }
        Self { n, k, text }
    }

    /// Parses the hex serialisation of a `k x n` matrix.
    pub fn parse(n: usize, k: usize, text: &str) -> Result<Self> {
        let m = Self::decode(n, k, text)?;
        let form = Self::from_matrix(&m);
        if form.text != text {
            return Err(Error::Parse { line: 0, msg: format!("non-normalised canonical text {text:?}") });
        }
        Ok(form)
    }

    fn decode(n: usize, k: usize, text: &str) -> Result<BitMatrix> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        if n > WORD_BITS {
            return Err(Error::LengthTooLarge { n, max: WORD_BITS });
        }
        if k == 0 {
            return if text == "-" { Ok(BitMatrix::zeros(0, n)) } else { Err(bad("expected '-'".into())) };
        }
        let digits = n.div_ceil(4);
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != k {
            return Err(bad(format!("expected {k} rows, found {}", parts.len())));
        }
        let mut rows = Vec::with_capacity(k);
        for part in parts {
            if part.len() != digits {
                return Err(bad(format!("row {part:?} should have {digits} hex digits")));
            }
            let mut row = 0u64;
            for (d, ch) in part.chars().enumerate() {
                let nib = ch
                    .to_digit(16)
                    .filter(|_| !ch.is_ascii_uppercase())
                    .ok_or_else(|| bad(format!("bad hex digit {ch:?}")))?;
                for b in 0..4 {
                    if nib & (8 >> b) != 0 {
                        let j = 4 * d + b;
                        if j >= n {
                            return Err(bad("padding bits must be zero".into()));
                        }
                        row |= 1u64 << j;
                    }
                }
            }
            rows.push(row);
        }
        BitMatrix::from_rows(n, &rows)
    }

    /// The generator matrix this form serialises.
    pub fn to_matrix(&self) -> BitMatrix {
        Self::decode(self.n, self.k, &self.text).expect("canonical form text is always well formed")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Permutation-invariant summary used to bucket codes before comparing
/// canonical forms. Equal keys are necessary, not sufficient, for equivalence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantKey {
    pub n: usize,
    pub k: usize,
    pub code_enumerator: Vec<u64>,
    pub dual_enumerator: Vec<u64>,
    /// Sorted multiset of per-coordinate weight profiles of the spanning set.
    pub coordinate_profile: Vec<Vec<u32>>,
}

/// Result of canonisation.
#[derive(Clone, Debug)]
pub struct Canonized {
    pub form: CanonicalForm,
    /// Reduced row echelon form of the canonically relabelled code.
    pub matrix: BitMatrix,
    /// `lab[j]` is the canonical position of input coordinate `j`.
    pub labelling: Vec<usize>,
    /// Generators of (a subgroup of) the automorphism group, as coordinate
    /// permutations of the input; `g[j]` is the image of coordinate `j`.
    pub automorphisms: Vec<Vec<usize>>,
}

fn check_input(g: &BitMatrix) -> Result<()> {
    if g.cols() > WORD_BITS {
        return Err(Error::LengthTooLarge { n: g.cols(), max: WORD_BITS });
    }
    let rank = g.rank();
    if rank != g.rows() {
        return Err(Error::RankDeficient { rank, rows: g.rows() });
    }
    Ok(())
}

/// Packed rows of the smaller of the code and its dual.
fn smaller_side(g: &BitMatrix) -> Result<Vec<u64>> {
    let n = g.cols();
    let k = g.rows();
    let side = if k <= n - k { g.rref().matrix } else { g.dual_generator()? };
    if side.rows() > MAX_CANON_DIM {
        return Err(Error::DimensionTooLarge { k: side.rows(), max: MAX_CANON_DIM });
    }
    side.packed_rows()
}

/// The nonzero codewords of the smallest weights that together span the code.
fn spanning_words(rows: &[u64]) -> Vec<u64> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let mut words = Vec::with_capacity((1usize << m) - 1);
    metrics::for_each_codeword(rows, |c| {
        if c != 0 {
            words.push(c)
        }
    });
    words.sort_unstable_by_key(|&w| (w.count_ones(), w));
    let mut basis = [0u64; 64];
    let mut rank = 0;
    let mut cut = words.len();
    for (i, &w) in words.iter().enumerate() {
        let mut x = w;
        while x != 0 {
            let hb = 63 - x.leading_zeros() as usize;
            if basis[hb] == 0 {
                basis[hb] = x;
                rank += 1;
                break;
            }
            x ^= basis[hb];
        }
        if rank == m {
            let wt = w.count_ones();
            cut = words[i..].iter().position(|&v| v.count_ones() != wt).map_or(words.len(), |p| i + p);
            break;
        }
    }
    words.truncate(cut);
    words
}

fn symmetric_generators(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let mut gens = vec![swap];
    if n > 2 {
        gens.push((0..n).map(|j| (j + 1) % n).collect());
    }
    gens
}

/// Canonical relabelling, canonical form and automorphism generators of the
/// code spanned by `g` (which must have full row rank).
pub fn canonize(g: &BitMatrix) -> Result<Canonized> {
    check_input(g)?;
    let n = g.cols();
    let words = spanning_words(&smaller_side(g)?);
    let (labelling, automorphisms) = if words.is_empty() {
        ((0..n).collect(), symmetric_generators(n))
    } else {
        let l = canonical_labelling(&Incidence::new(n, words));
        (l.lab, l.generators)
    };
    let matrix = g.permute_columns(&labelling).rref().matrix;
    let form = CanonicalForm::from_matrix(&matrix);
    Ok(Canonized { form, matrix, labelling, automorphisms })
}

pub fn canonical_form(g: &BitMatrix) -> Result<CanonicalForm> {
    Ok(canonize(g)?.form)
}

pub fn invariant_key(g: &BitMatrix) -> Result<InvariantKey> {
    check_input(g)?;
    let n = g.cols();
    let (code, dual) = metrics::enumerators(g)?;
    let words = spanning_words(&smaller_side(g)?);
    let mut profile = vec![vec![0u32; n + 1]; n];
    for &w in &words {
        let wt = w.count_ones() as usize;
        let mut b = w;
        while b != 0 {
            profile[b.trailing_zeros() as usize][wt] += 1;
            b &= b - 1;
        }
    }
    profile.sort_unstable();
    Ok(InvariantKey {
        n,
        k: g.rows(),
        code_enumerator: code.coeffs().to_vec(),
        dual_enumerator: dual.coeffs().to_vec(),
        coordinate_profile: profile,
    })
}

/// Whether some coordinate permutation maps one code onto the other.
pub fn are_equivalent(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Ok(false);
    }
    if invariant_key(a)? != invariant_key(b)? {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming74() -> BitMatrix {
        BitMatrix::parse("1000011\n0100101\n0010110\n0001111\n").unwrap()
    }

    #[test]
    fn hex_roundtrip() {
        let c = canonize(&hamming74()).unwrap();
        let parsed = CanonicalForm::parse(7, 4, c.form.as_str()).unwrap();
        assert_eq!(parsed, c.form);
        assert_eq!(parsed.to_matrix(), c.matrix);
    }

    #[test]
    fn hex_layout_is_msb_first() {
        let m = BitMatrix::parse("10000\n01001\n").unwrap();
        assert_eq!(CanonicalForm::from_matrix(&m).as_str(), "80:48");
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert!(CanonicalForm::parse(5, 2, "80").is_err());
        assert!(CanonicalForm::parse(5, 2, "84:48").is_err());
        assert!(CanonicalForm::parse(5, 1, "8G").is_err());
        assert!(CanonicalForm::parse(5, 1, "A0").is_err());
    }

    #[test]
    fn automorphisms_preserve_the_code() {
        let g = hamming74();
        let c = canonize(&g).unwrap();
        assert!(!c.automorphisms.is_empty());
        for a in &c.automorphisms {
            let img = g.permute_columns(a);
            assert_eq!(img.rref(), g.rref());
        }
    }

    #[test]
    fn permuted_hamming_is_equivalent() {
        let g = hamming74();
        let p = g.permute_columns(&[6, 2, 0, 5, 1, 3, 4]);
        assert!(are_equivalent(&g, &p).unwrap());
        let other = BitMatrix::parse("1000011\n0100101\n0010110\n0001110\n").unwrap();
        assert!(!are_equivalent(&g, &other).unwrap());
    }

    #[test]
    fn parameter_mismatch_is_not_equivalent() {
        assert!(!are_equivalent(&BitMatrix::identity(3), &BitMatrix::identity(4)).unwrap());
    }

    #[test]
    fn spanning_set_stops_at_full_rank() {
        // [4,2] code {0, 1100, 0011, 1111}: the two weight-2 words span it.
        let words = spanning_words(&[0b0011, 0b1100]);
        assert_eq!(words, vec![0b0011, 0b1100]);
    }
}
