//! Length extension of codes by one admissible column.
//!
//! A column `b` may be appended to a generator matrix with dual distance at
//! least `dperp` exactly when `b` is not a sum of `dperp - 2` or fewer of its
//! columns. The forbidden sums are cleared from a flat `2^k`-bit mask by a
//! depth-first subset walk with incremental XOR; the surviving columns are
//! then reduced to orbits of the parent's automorphism group before the
//! extended codes are canonised and merged.

use std::collections::BTreeMap;

use crate::classifier::CodeRecord;
use crate::equivalence::{self, CanonicalForm};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::par::{self, Parallelism};

/// Largest dimension for which a `2^k` candidate mask is built.
pub const MAX_MASK_DIM: usize = 28;

/// Admissible column values, indexed `1..2^k`; index 0 is never admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateMask {
    k: usize,
    words: Vec<u64>,
}

impl CandidateMask {
    fn full(k: usize) -> Self {
        let size = 1usize << k;
        let mut words = vec![u64::MAX; size.div_ceil(64)];
        if size < 64 {
            words[0] = (1u64 << size) - 1;
        }
        words[0] &= !1;
        Self { k, words }
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn contains(&self, b: u64) -> bool {
        (self.words[(b >> 6) as usize] >> (b & 63)) & 1 == 1
    }

    #[inline]
    fn clear(&mut self, b: u64) {
        self.words[(b >> 6) as usize] &= !(1u64 << (b & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Admissible values in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(((wi as u64) << 6) | b)
            })
        })
    }
}

/// Counters from one extension pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtensionStats {
    pub parents: usize,
    /// Column combinations XORed while building candidate masks.
    pub combinations: u64,
    pub candidates: usize,
    /// Candidates left after reduction by parent automorphisms.
    pub orbit_representatives: usize,
    pub classes: usize,
}

impl ExtensionStats {
    fn absorb(&mut self, other: &ExtensionStats) {
        self.parents += other.parents;
        self.combinations += other.combinations;
        self.candidates += other.candidates;
        self.orbit_representatives += other.orbit_representatives;
    }
}

/// Mask of the columns that can be appended to `g` keeping every set of
/// `dperp - 1` columns independent.
pub fn candidate_columns(g: &BitMatrix, dperp: usize) -> Result<CandidateMask> {
    Ok(candidate_columns_counted(g, dperp)?.0)
}

/// As [`candidate_columns`], also returning the number of column sums formed.
pub fn candidate_columns_counted(g: &BitMatrix, dperp: usize) -> Result<(CandidateMask, u64)> {
    let k = g.rows();
    if k > MAX_MASK_DIM {
        return Err(Error::DimensionTooLarge { k, max: MAX_MASK_DIM });
    }
    let mut mask = CandidateMask::full(k);
    let mut count = 0u64;
    let depth = dperp.saturating_sub(2);
    if depth > 0 {
        clear_sums(g.columns(), 0, depth, 0, &mut mask, &mut count);
    }
    Ok((mask, count))
}

fn clear_sums(cols: &[u64], start: usize, depth: usize, acc: u64, mask: &mut CandidateMask, count: &mut u64) {
    for j in start..cols.len() {
        let x = acc ^ cols[j];
        mask.clear(x);
        *count += 1;
        if depth > 1 {
            clear_sums(cols, j + 1, depth - 1, x, mask, count);
        }
    }
}

/// Linear maps on column space induced by coordinate automorphisms of `g`.
///
/// For an automorphism moving column `j` to `perm[j]` there is an invertible
/// `M` with `M g = g'`, where `g'` is the permuted matrix; appending `b` or
/// `M b` then yields equivalent codes. Permutations that are not
/// automorphisms are skipped.
pub fn induced_linear_maps(g: &BitMatrix, perms: &[Vec<usize>]) -> Vec<BitMatrix> {
    let rref = g.rref();
    if rref.pivots.len() != g.rows() {
        return Vec::new();
    }
    let basis = g.select_columns(&rref.pivots);
    let Some(inv) = basis.inverse() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(perms.len());
    for perm in perms {
        let image = g.permute_columns(perm);
        let targets = image.select_columns(&rref.pivots);
        let cols: Vec<u64> = (0..g.rows()).map(|j| targets.mul_vec(inv.column(j))).collect();
        let m = BitMatrix::from_columns(g.rows(), cols).expect("k-bit columns");
        if g.columns().iter().zip(image.columns()).all(|(&c, &d)| m.mul_vec(c) == d) {
            out.push(m);
        }
    }
    out
}

/// One representative (the smallest value) per orbit of `maps` on the mask.
pub fn orbit_representatives(mask: &CandidateMask, maps: &[BitMatrix]) -> Vec<u64> {
    if maps.is_empty() {
        return mask.iter().collect();
    }
    let mut seen = CandidateMask { k: mask.k, words: vec![0; mask.words.len()] };
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for b in mask.iter() {
        if seen.contains(b) {
            continue;
        }
        reps.push(b);
        seen.words[(b >> 6) as usize] |= 1u64 << (b & 63);
        stack.push(b);
        while let Some(x) = stack.pop() {
            for m in maps {
                let y = m.mul_vec(x);
                if !seen.contains(y) {
                    debug_assert!(mask.contains(y));
                    seen.words[(y >> 6) as usize] |= 1u64 << (y & 63);
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// All inequivalent one-column extensions of a single code, keyed by canonical form.
pub fn extend_code(g: &BitMatrix, dperp: usize) -> Result<(BTreeMap<CanonicalForm, BitMatrix>, ExtensionStats)> {
    let (mask, combinations) = candidate_columns_counted(g, dperp)?;
    let mut stats = ExtensionStats { parents: 1, combinations, candidates: mask.count(), ..Default::default() };
    let mut out = BTreeMap::new();
    if mask.is_empty() {
        return Ok((out, stats));
    }
    let parent = equivalence::canonize(g)?;
    let maps = induced_linear_maps(g, &parent.automorphisms);
    let reps = orbit_representatives(&mask, &maps);
    stats.orbit_representatives = reps.len();
    for b in reps {
        let c = equivalence::canonize(&g.with_column(b))?;
        out.entry(c.form).or_insert(c.matrix);
    }
    stats.classes = out.len();
    Ok((out, stats))
}

/// Extends every input matrix and merges the results in canonical order.
pub fn extend_all(
    inputs: &[BitMatrix],
    dperp: usize,
    par: Parallelism,
) -> Result<(BTreeMap<CanonicalForm, BitMatrix>, ExtensionStats)> {
    let parts = par::map(par, inputs, |g| extend_code(g, dperp));
    let mut merged = BTreeMap::new();
    let mut stats = ExtensionStats::default();
    for part in parts {
        let (classes, s) = part?;
        stats.absorb(&s);
        for (form, m) in classes {
            merged.entry(form).or_insert(m);
        }
    }
    stats.classes = merged.len();
    Ok((merged, stats))
}

/// One representative per class of `[n+1, k]` codes with dual distance at
/// least `dperp` that shorten to one of the input codes.
pub fn bruteforce_extend_all(input: &[CodeRecord], dperp: usize, par: Parallelism) -> Result<Vec<CodeRecord>> {
    Ok(bruteforce_extend_all_with_stats(input, dperp, par)?.0)
}

pub fn bruteforce_extend_all_with_stats(
    input: &[CodeRecord],
    dperp: usize,
    par: Parallelism,
) -> Result<(Vec<CodeRecord>, ExtensionStats)> {
    let matrices: Vec<BitMatrix> = input.iter().map(|r| r.matrix.clone()).collect();
    let (merged, stats) = extend_all(&matrices, dperp, par)?;
    let entries: Vec<(CanonicalForm, BitMatrix)> = merged.into_iter().collect();
    let records = par::map(par, &entries, |(form, m)| CodeRecord::from_canonical(form.clone(), m.clone(), dperp));
    Ok((records.into_iter().collect::<Result<Vec<_>>>()?, stats))
}
