//! Weight enumerators, minimum distance, dual distance and evenness.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, WORD_BITS};

/// Largest dimension whose codewords are enumerated exhaustively.
pub const MAX_ENUM_DIM: usize = 28;

/// A minimum distance that may be infinite (the zero code has no nonzero word).
///
/// `Inf` orders above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Inf,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Inf => None,
        }
    }

    /// `self >= d` for a finite threshold.
    pub fn at_least(self, d: usize) -> bool {
        self >= Distance::Finite(d)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Inf => f.write_str("inf"),
        }
    }
}

/// Weight distribution `A_0..A_n` of a code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightEnumerator {
    coeffs: Vec<u64>,
}

impl WeightEnumerator {
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Code length `n` (the enumerator has `n + 1` coefficients).
    pub fn length(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Smallest positive weight with a nonzero coefficient.
    pub fn min_distance(&self) -> Distance {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|&(_, &a)| a > 0)
            .map_or(Distance::Inf, |(w, _)| Distance::Finite(w))
    }

    /// Parses `1 + 124z^8 + z^32` style polynomials of the given length.
    pub fn parse_polynomial(n: usize, text: &str) -> Result<Self> {
        let mut coeffs = vec![0u64; n + 1];
        let bad = |msg: &str| Error::InvalidEnumerator(format!("{msg} in {text:?}"));
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef, exp) = match term.find('z') {
                None => (term, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim();
                    let rest = term[pos + 1..].trim();
                    let e = if rest.is_empty() {
                        1
                    } else {
                        let e = rest.strip_prefix('^').ok_or_else(|| bad("missing '^'"))?;
                        let e = e.trim_matches(|c| c == '{' || c == '}');
                        e.parse().map_err(|_| bad("bad exponent"))?
                    };
                    (c, e)
                }
            };
            let c: u64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad("bad coefficient"))? };
            if exp > n {
                return Err(bad("exponent exceeds length"));
            }
            coeffs[exp] += c;
        }
        Ok(Self { coeffs })
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (w, a) {
                (0, a) => write!(f, "{a}")?,
                (w, 1) => write!(f, "z^{w}")?,
                (w, a) => write!(f, "{a}z^{w}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn enumeration_guard(g: &BitMatrix) -> Result<()> {
    if g.rows() > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge { k: g.rows(), max: MAX_ENUM_DIM });
    }
    if g.cols() > WORD_BITS {
        return Err(Error::LengthTooLarge { n: g.cols(), max: WORD_BITS });
    }
    Ok(())
}

/// Calls `f` on every codeword spanned by `rows`, in reflected Gray-code order
/// starting from the zero word.
pub fn for_each_codeword(rows: &[u64], mut f: impl FnMut(u64)) {
    let mut cw = 0u64;
    f(cw);
    let count = 1u64 << rows.len();
    for i in 1..count {
        cw ^= rows[i.trailing_zeros() as usize];
        f(cw);
    }
}

/// Weight distribution of the row space of `g`, which must have full row rank.
pub fn weight_enumerator(g: &BitMatrix) -> Result<WeightEnumerator> {
    enumeration_guard(g)?;
    let rank = g.rank();
    if rank != g.rows() {
        return Err(Error::RankDeficient { rank, rows: g.rows() });
    }
    Ok(enumerate_rows(g.cols(), &g.packed_rows()?))
}

fn enumerate_rows(n: usize, rows: &[u64]) -> WeightEnumerator {
    let mut coeffs = vec![0u64; n + 1];
    for_each_codeword(rows, |c| coeffs[c.count_ones() as usize] += 1);
    WeightEnumerator { coeffs }
}

/// Minimum distance; the zero code reports [`Error::ZeroCode`].
pub fn min_distance(g: &BitMatrix) -> Result<usize> {
    if g.rows() == 0 {
        return Err(Error::ZeroCode);
    }
    weight_enumerator(g)?.min_distance().finite().ok_or(Error::ZeroCode)
}

/// Weight enumerators of the code and of its dual, enumerating whichever of the
/// two has the smaller dimension and transforming the other.
pub fn enumerators(g: &BitMatrix) -> Result<(WeightEnumerator, WeightEnumerator)> {
    let n = g.cols();
    let k = g.rows();
    if n > WORD_BITS {
        return Err(Error::LengthTooLarge { n, max: WORD_BITS });
    }
    if k <= n.saturating_sub(k) {
        let code = weight_enumerator(g)?;
        let dual = macwilliams_dual_enumerator(&code, n, k)?;
        Ok((code, dual))
    } else {
        let h = g.dual_generator()?;
        let dual = weight_enumerator(&h)?;
        let code = macwilliams_dual_enumerator(&dual, n, n - k)?;
        Ok((code, dual))
    }
}

/// Dual distance; `Inf` for the full space.
pub fn dual_distance(g: &BitMatrix) -> Result<Distance> {
    let n = g.cols();
    let k = g.rows();
    let rank = g.rank();
    if rank != k {
        return Err(Error::RankDeficient { rank, rows: k });
    }
    if k == n {
        return Ok(Distance::Inf);
    }
    if n - k <= k {
        let h = g.dual_generator()?;
        Ok(weight_enumerator(&h)?.min_distance())
    } else {
        let code = weight_enumerator(g)?;
        Ok(macwilliams_dual_enumerator(&code, n, k)?.min_distance())
    }
}

/// Whether every codeword has even weight.
pub fn is_even(g: &BitMatrix) -> bool {
    g.row_parities() == 0
}

/// Whether the all-ones word is a codeword.
pub fn contains_all_ones(g: &BitMatrix) -> Result<bool> {
    g.contains_word(crate::gf2::low_mask(g.cols()))
}

fn binomial_table(n: usize) -> Vec<Vec<i128>> {
    let mut c = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { 0 };
        }
    }
    c
}

/// Binary Krawtchouk polynomial `K_j(i)` for length `n`.
fn krawtchouk(binom: &[Vec<i128>], n: usize, j: usize, i: usize) -> i128 {
    let mut sum = 0i128;
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let term = binom[i][s] * binom[n - i][j - s];
        if s % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Dual weight distribution via the binary MacWilliams transform
/// `B_j = 2^-k * sum_i A_i K_j(i)`.
pub fn macwilliams_dual_enumerator(w: &WeightEnumerator, n: usize, k: usize) -> Result<WeightEnumerator> {
    if w.coeffs.len() != n + 1 {
        return Err(Error::InvalidEnumerator(format!(
            "{} coefficients for length {n}",
            w.coeffs.len()
        )));
    }
    if n > WORD_BITS || k > n {
        return Err(Error::InvalidEnumerator(format!("bad parameters n={n}, k={k}")));
    }
    let binom = binomial_table(n);
    let denom = 1i128 << k;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = 0i128;
        for (i, &a) in w.coeffs.iter().enumerate() {
            if a != 0 {
                acc += a as i128 * krawtchouk(&binom, n, j, i);
            }
        }
        if acc < 0 || acc % denom != 0 {
            return Err(Error::InvalidEnumerator(format!("transform coefficient {j} is {acc}/{denom}")));
        }
        let b = acc / denom;
        out.push(u64::try_from(b).map_err(|_| Error::InvalidEnumerator(format!("coefficient {j} overflows")))?);
    }
    Ok(WeightEnumerator { coeffs: out })
}

impl PartialOrd<usize> for Distance {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        Some(self.cmp(&Distance::Finite(*other)))
    }
}

impl PartialEq<usize> for Distance {
    fn eq(&self, other: &usize) -> bool {
        *self == Distance::Finite(*other)
    }
}
