//! Brute-force oracles shared by the integration tests. None of them call the
//! library's canonisation, extension or search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dualcode::BitMatrix;

/// Size of the smallest nonempty set of columns summing to zero, if any.
/// This is the dual distance.
pub fn smallest_dependent_set(g: &BitMatrix) -> Option<usize> {
    let cols = g.columns();
    let n = cols.len();
    assert!(n <= 20, "oracle is exponential in n");
    let mut best: Option<usize> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let sum = (0..n).filter(|&j| mask >> j & 1 == 1).fold(0u64, |a, j| a ^ cols[j]);
        if sum == 0 {
            best = Some(size);
        }
    }
    best
}

/// Dual distance at least `dperp`, with the full space counting as infinite.
pub fn dual_distance_at_least(g: &BitMatrix, dperp: usize) -> bool {
    smallest_dependent_set(g).is_none_or(|s| s >= dperp)
}

/// Rank by plain row reduction over packed rows.
pub fn rank_of(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Every subset of at most `p` of `vectors` is linearly independent
/// (repeated vectors count as dependent).
pub fn is_p_proper(vectors: &[u64], p: usize) -> bool {
    fn rec(vs: &[u64], start: usize, chosen: &mut Vec<u64>, p: usize) -> bool {
        if !chosen.is_empty() && rank_of(chosen) < chosen.len() {
            return false;
        }
        if chosen.len() == p {
            return true;
        }
        for i in start..vs.len() {
            chosen.push(vs[i]);
            let ok = rec(vs, i + 1, chosen, p);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(vectors, 0, &mut Vec::new(), p)
}

/// Inverse of an `m x m` matrix given by packed columns, by Gauss-Jordan on
/// an explicit 0/1 grid.
fn invert(cols: &[u64], m: usize) -> Option<Vec<u64>> {
    let mut a: Vec<Vec<u8>> = (0..m)
        .map(|i| {
            let mut row: Vec<u8> = cols.iter().map(|&c| (c >> i & 1) as u8).collect();
            row.extend((0..m).map(|j| u8::from(i == j)));
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&r| a[r][c] == 1)?;
        a.swap(c, p);
        for r in 0..m {
            if r != c && a[r][c] == 1 {
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
    }
    Some((0..m).map(|j| (0..m).fold(0u64, |acc, i| acc | (u64::from(a[i][m + j]) << i))).collect())
}

fn apply(inv: &[u64], v: u64) -> u64 {
    (0..inv.len()).filter(|&j| v >> j & 1 == 1).fold(0, |acc, j| acc ^ inv[j])
}

/// A complete invariant of a multiset of vectors spanning `F_2^m` under
/// `GL(m)`: the smallest sorted image over all maps sending an ordered tuple of
/// the vectors to the standard basis.
pub fn gl_canonical(cols: &[u64], m: usize) -> Vec<u64> {
    if m == 0 {
        return vec![0; cols.len()];
    }
    let n = cols.len();
    let mut best: Option<Vec<u64>> = None;
    let mut tuple = Vec::with_capacity(m);
    fn walk(cols: &[u64], m: usize, n: usize, tuple: &mut Vec<usize>, best: &mut Option<Vec<u64>>) {
        if tuple.len() == m {
            let basis: Vec<u64> = tuple.iter().map(|&j| cols[j]).collect();
            if let Some(inv) = invert(&basis, m) {
                let mut img: Vec<u64> = cols.iter().map(|&c| apply(&inv, c)).collect();
                img.sort_unstable();
                if best.as_ref().is_none_or(|b| img < *b) {
                    *best = Some(img);
                }
            }
            return;
        }
        for j in 0..n {
            if !tuple.contains(&j) {
                tuple.push(j);
                walk(cols, m, n, tuple, best);
                tuple.pop();
            }
        }
    }
    walk(cols, m, n, &mut tuple, &mut best);
    best.expect("columns span the space")
}

/// Complete invariant of a full-rank code under coordinate permutations:
/// length, dimension, and the GL-invariant of the columns of whichever of the
/// code and its dual has the smaller dimension.
pub fn code_invariant(g: &BitMatrix) -> (usize, usize, Vec<u64>) {
    let n = g.cols();
    let k = g.rows();
    let side = if k <= n - k { g.clone() } else { g.dual_generator().unwrap() };
    (n, k, gl_canonical(side.columns(), side.rows()))
}

/// Classes of `[n, k]` codes with dual distance at least `dperp`, level by
/// level from the `[k, k]` full space, trying every nonzero column.
pub fn naive_family(k: usize, dperp: usize, n_max: usize) -> Vec<BTreeSet<(usize, usize, Vec<u64>)>> {
    let mut levels = Vec::new();
    let mut reps = vec![BitMatrix::identity(k)];
    levels.push(reps.iter().map(code_invariant).collect::<BTreeSet<_>>());
    for _ in k..n_max {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &reps {
            for b in 1..1u64 << k {
                let h = g.with_column(b);
                if !dual_distance_at_least(&h, dperp) {
                    continue;
                }
                if seen.insert(code_invariant(&h)) {
                    next.push(h);
                }
            }
        }
        let empty = next.is_empty();
        levels.push(seen);
        reps = next;
        if empty {
            break;
        }
    }
    levels
}

/// All `t`-subsets (as index lists) of `v` that together with `a` are
/// `(dperp - 1)`-proper.
pub fn brute_force_proper_sets(a: &BitMatrix, v: &[u64], t: usize, dperp: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx = Vec::new();
    fn rec(a: &BitMatrix, v: &[u64], t: usize, p: usize, start: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx.len() == t {
            let mut all: Vec<u64> = a.columns().to_vec();
            all.extend(idx.iter().map(|&i| v[i]));
            if is_p_proper(&all, p) {
                out.push(idx.clone());
            }
            return;
        }
        for i in start..v.len() {
            idx.push(i);
            rec(a, v, t, p, i + 1, idx, out);
            idx.pop();
        }
    }
    rec(a, v, t, dperp - 1, 0, &mut idx, &mut out);
    out
}

/// A uniformly random permutation of `0..n` from a seeded generator.
pub fn random_permutation(rng: &mut impl rand::Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Every codeword of the row space, by plain subset sums.
pub fn codewords(g: &BitMatrix) -> Vec<u64> {
    let rows = g.packed_rows().unwrap();
    (0..1u64 << rows.len())
        .map(|m| (0..rows.len()).filter(|&i| m >> i & 1 == 1).fold(0, |a, i| a ^ rows[i]))
        .collect()
}

pub fn brute_enumerator(g: &BitMatrix) -> Vec<u64> {
    let mut a = vec![0u64; g.cols() + 1];
    for w in codewords(g) {
        a[w.count_ones() as usize] += 1;
    }
    a
}

pub fn brute_min_distance(g: &BitMatrix) -> Option<usize> {
    codewords(g).into_iter().filter(|&w| w != 0).map(|w| w.count_ones() as usize).min()
}

fn extends_basis(rows: &[u64], r: u64) -> bool {
    let mut all = rows.to_vec();
    all.push(r);
    rank_of(&all) == all.len()
}

/// An invertible `k x k` matrix as packed rows, from a seed of random rows.
pub fn invertible(k: usize, seed: &[u64]) -> Vec<u64> {
    let mut rows: Vec<u64> = Vec::new();
    let mask = (1u64 << k) - 1;
    for &s in seed {
        let r = s & mask;
        if r != 0 && extends_basis(&rows, r) {
            rows.push(r);
        }
        if rows.len() == k {
            return rows;
        }
    }
    // Top up with unit vectors.
    for i in 0..k {
        if rows.len() == k {
            break;
        }
        if extends_basis(&rows, 1u64 << i) {
            rows.push(1u64 << i);
        }
    }
    rows
}

/// `t * g`, with `t` given as packed rows over the rows of `g`.
pub fn row_transform(g: &BitMatrix, t: &[u64]) -> BitMatrix {
    let rows = g.packed_rows().unwrap();
    let new: Vec<u64> =
        t.iter().map(|&m| (0..rows.len()).filter(|&i| m >> i & 1 == 1).fold(0, |a, i| a ^ rows[i])).collect();
    BitMatrix::from_rows(g.cols(), &new).unwrap()
}
