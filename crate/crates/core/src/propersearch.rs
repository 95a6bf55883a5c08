//! Branch-and-bound search for proper column sets.
//!
//! Given the left block `A` of a generator matrix, the search looks for `t`
//! further columns, each with a leading 1, such that every `dperp - 1` columns
//! of the whole matrix stay linearly independent. The admissible vectors `V`
//! are ordered, and the search from `v_i` only ever extends with later
//! vectors. As in Östergård's clique algorithm the largest set found inside
//! `{v_i, .., v_N}` is recorded in `r[i]` (capped at `t`) and used to prune
//! searches that start further left.
//!
//! Forbidden sums are kept as one `2^k`-bit set per number of summands, so
//! appending a column updates them by translation: `S'_j = S_j | (S_{j-1} ^ v)`.

use std::collections::BTreeMap;

use crate::equivalence::{self, CanonicalForm};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::metrics;
use crate::par::{self, Parallelism};
use crate::residual;

/// Largest dimension for which the `2^k`-bit sum sets are built.
pub const MAX_SEARCH_DIM: usize = 28;

const HALF_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Layered sets of column sums: `layers[j]` holds every sum of at most `j`
/// distinct columns.
#[derive(Clone, Debug)]
struct SumLayers {
    layers: Vec<Vec<u64>>,
}

impl SumLayers {
    fn new(k: usize, depth: usize) -> Self {
        let words = (1usize << k).div_ceil(64);
        let mut zero = vec![0u64; words];
        zero[0] = 1;
        Self { layers: vec![zero; depth + 1] }
    }

    #[inline]
    fn top_contains(&self, x: u64) -> bool {
        let top = self.layers.last().expect("at least the empty-sum layer");
        (top[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    fn push(&mut self, v: u64) {
        let hi = (v >> 6) as usize;
        let lo = v & 63;
        for j in (1..self.layers.len()).rev() {
            let (lower, upper) = self.layers.split_at_mut(j);
            let src = &lower[j - 1];
            for (w, dst) in upper[0].iter_mut().enumerate() {
                *dst |= permute_in_word(src[w ^ hi], lo);
            }
        }
    }

    fn copy_from(&mut self, other: &SumLayers) {
        for (dst, src) in self.layers.iter_mut().zip(&other.layers) {
            dst.copy_from_slice(src);
        }
    }
}

/// Moves bit `b` of `x` to bit `b ^ lo`.
#[inline]
fn permute_in_word(mut x: u64, lo: u64) -> u64 {
    for (s, &m) in HALF_MASKS.iter().enumerate() {
        if (lo >> s) & 1 == 1 {
            let shift = 1u32 << s;
            x = ((x & m) << shift) | ((x >> shift) & m);
        }
    }
    x
}

/// Candidate columns for the search, in ascending numeric order.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    k: usize,
    dperp: usize,
    odd_only: bool,
    vectors: Vec<u64>,
    base: SumLayers,
}

impl SearchSpace {
    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn dperp(&self) -> usize {
        self.dperp
    }

    pub fn odd_only(&self) -> bool {
        self.odd_only
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Vectors with a leading 1 (bit 0) that are not a sum of `dperp - 2` or fewer
/// columns of `a`; with `odd_only`, restricted further to odd weight.
pub fn build_search_space(a: &BitMatrix, dperp: usize, odd_only: bool) -> Result<SearchSpace> {
    let k = a.rows();
    if k > MAX_SEARCH_DIM {
        return Err(Error::DimensionTooLarge { k, max: MAX_SEARCH_DIM });
    }
    if k == 0 {
        return Ok(SearchSpace { k, dperp, odd_only, vectors: Vec::new(), base: SumLayers::new(0, 0) });
    }
    let mut base = SumLayers::new(k, dperp.saturating_sub(2));
    for &c in a.columns() {
        base.push(c);
    }
    let vectors = (0..1u64 << k)
        .filter(|&x| x & 1 == 1)
        .filter(|&x| !odd_only || x.count_ones() % 2 == 1)
        .filter(|&x| !base.top_contains(x))
        .collect();
    Ok(SearchSpace { k, dperp, odd_only, vectors, base })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every proper set of the target size.
    EnumerateAll,
    /// Stop at the first proper set of the target size.
    Exists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Size-bound and `r`-vector pruning. Turning it off leaves a plain
    /// depth-first enumeration, used to cross-check the pruned search.
    pub pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { mode: SearchMode::EnumerateAll, pruning: true }
    }
}

/// A set of chosen columns, by position in the search space and by value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProperSet {
    pub indices: Vec<usize>,
    pub vectors: Vec<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    /// Found sets in lexicographic index order; at most one in exists mode.
    pub sets: Vec<ProperSet>,
    pub found: bool,
    /// `r[i]` is the size of the largest proper set inside `{v_i, .., v_N}`,
    /// capped at the target size. Empty when pruning is off or the search
    /// stopped early.
    pub r: Vec<usize>,
    pub nodes: u64,
}

struct Search<'a> {
    space: &'a SearchSpace,
    t: usize,
    opts: SearchOptions,
    r: Vec<usize>,
    best: usize,
    /// Largest size still worth reporting as an improvement from the current root.
    ceiling: usize,
    stop: bool,
    chosen: Vec<usize>,
    stack: Vec<SumLayers>,
    out: SearchOutcome,
}

impl Search<'_> {
    fn pruned(&self, bound: usize) -> bool {
        self.opts.pruning && bound < self.t && bound <= self.best
    }

    /// Adds `v_i` at depth `size` (the number already chosen) and returns the
    /// admissible continuation from `u`.
    fn descend(&mut self, size: usize, i: usize, u: &[usize]) -> Vec<usize> {
        let v = self.space.vectors[i];
        let (before, after) = self.stack.split_at_mut(size + 1);
        let next = &mut after[0];
        next.copy_from(&before[size]);
        next.push(v);
        u.iter().copied().filter(|&j| !next.top_contains(self.space.vectors[j])).collect()
    }

    fn record(&mut self) {
        self.out.found = true;
        let indices = self.chosen.clone();
        let vectors = indices.iter().map(|&i| self.space.vectors[i]).collect();
        self.out.sets.push(ProperSet { indices, vectors });
        if self.opts.mode == SearchMode::Exists {
            self.stop = true;
        }
    }

    fn note_size(&mut self, size: usize) {
        if size > self.best {
            self.best = size;
            if self.opts.pruning && self.best >= self.ceiling && self.ceiling < self.t {
                self.stop = true;
            }
        }
    }

    fn expand(&mut self, size: usize, mut u: &[usize]) {
        while let Some((&i, rest)) = u.split_first() {
            if self.stop || self.pruned(size + u.len()) {
                return;
            }
            if self.opts.pruning && self.pruned(size + self.r[i]) {
                return;
            }
            u = rest;
            self.out.nodes += 1;
            self.chosen.push(i);
            self.note_size(size + 1);
            if size + 1 == self.t {
                self.record();
            } else {
                let next = self.descend(size, i, u);
                self.expand(size + 1, &next);
            }
            self.chosen.pop();
        }
    }

    fn run(&mut self) {
        let n = self.space.vectors.len();
        self.r = vec![0; n + 1];
        if !self.opts.pruning {
            let all: Vec<usize> = (0..n).collect();
            self.expand(0, &all);
            return;
        }
        for i in (0..n).rev() {
            // The largest set inside {v_i, ..} is at most one larger than
            // the largest inside {v_{i+1}, ..}; reaching that ends the root.
            self.ceiling = self.r[i + 1] + 1;
            self.stop = false;
            self.out.nodes += 1;
            self.chosen.push(i);
            self.note_size(1);
            if self.t == 1 {
                self.record();
            } else {
                let later: Vec<usize> = (i + 1..n).collect();
                let next = self.descend(0, i, &later);
                self.expand(1, &next);
            }
            self.chosen.pop();
            if self.opts.mode == SearchMode::Exists && self.out.found {
                return;
            }
            self.r[i] = self.best.min(self.t);
        }
    }
}

/// Proper sets of `t` vectors from `space`: with the columns of the block the
/// space was built from, every `dperp - 1` columns are linearly independent.
pub fn find_proper_sets(space: &SearchSpace, t: usize, opts: SearchOptions) -> Result<SearchOutcome> {
    if t == 0 {
        return Err(Error::EmptyTarget);
    }
    let depth = space.base.layers.len() - 1;
    let mut stack = vec![space.base.clone()];
    stack.resize(t.min(space.vectors.len()) + 1, SumLayers::new(space.k, depth));
    let mut search = Search {
        space,
        t,
        opts,
        r: Vec::new(),
        best: 0,
        ceiling: usize::MAX,
        stop: false,
        chosen: Vec::with_capacity(t),
        stack,
        out: SearchOutcome::default(),
    };
    search.run();
    let Search { mut out, r, opts, .. } = search;
    out.sets.sort();
    if opts.pruning && !(opts.mode == SearchMode::Exists && out.found) {
        out.r = r[..space.vectors.len()].to_vec();
    }
    Ok(out)
}

/// `[A | s]`.
pub fn assemble_code(a: &BitMatrix, s: &ProperSet) -> BitMatrix {
    a.hconcat(&s.vectors)
}

/// A residual code placed into the block layout, ready for the search.
#[derive(Clone, Debug)]
pub struct ResidualInstance {
    /// Weight of the minimum-weight word the instance is built around.
    pub d: usize,
    pub residual: BitMatrix,
    pub scaffold: BitMatrix,
    pub space: SearchSpace,
}

/// Builds the search instance for a residual, or `None` when the residual
/// cannot come from an `[n, k]` code of minimum distance `d` (its distance
/// is below `ceil(d / 2)`, or, for `even`, it lacks the all-ones word).
pub fn residual_instance(res_g: &BitMatrix, d: usize, dperp: usize, even: bool) -> Result<Option<ResidualInstance>> {
    if res_g.rows() > 0 && metrics::min_distance(res_g)? < d.div_ceil(2) {
        return Ok(None);
    }
    let residual = if even {
        match residual::rebase_to_all_ones(res_g)? {
            Some(r) => r,
            None => return Ok(None),
        }
    } else {
        res_g.clone()
    };
    let scaffold = residual::scaffold(&residual, d);
    let space = build_search_space(&scaffold, dperp, even)?;
    Ok(Some(ResidualInstance { d, residual, scaffold, space }))
}

/// Codes of one residual instance whose minimum distance is exactly `d`,
/// keyed by canonical form.
pub fn extend_residual(inst: &ResidualInstance, even: bool) -> Result<BTreeMap<CanonicalForm, BitMatrix>> {
    let mut out = BTreeMap::new();
    let t = inst.d - 1;
    let sets = if t == 0 {
        vec![ProperSet { indices: Vec::new(), vectors: Vec::new() }]
    } else {
        find_proper_sets(&inst.space, t, SearchOptions::default())?.sets
    };
    for s in &sets {
        let g = assemble_code(&inst.scaffold, s);
        if metrics::min_distance(&g)? != inst.d {
            continue;
        }
        if even && !metrics::contains_all_ones(&g)? {
            continue;
        }
        let c = equivalence::canonize(&g)?;
        out.entry(c.form).or_insert(c.matrix);
    }
    Ok(out)
}

/// Parameters of a classification from residual codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidualTarget {
    pub n: usize,
    pub k: usize,
    pub dperp: usize,
    pub dmin: usize,
    pub dmax: usize,
    /// Only codes containing the all-ones word.
    pub even: bool,
}

/// Every inequivalent `[n, k]` code with dual distance at least `dperp` and
/// minimum distance in `dmin..=dmax`, built from complete lists of
/// `[n - d, k - 1]` residual codes keyed by `d`.
pub fn classify_via_residuals(
    residual_dbs: &BTreeMap<usize, Vec<BitMatrix>>,
    target: &ResidualTarget,
    par: Parallelism,
) -> Result<BTreeMap<CanonicalForm, BitMatrix>> {
    let &ResidualTarget { n, k, dperp, dmin, dmax, even } = target;
    let mut jobs = Vec::new();
    for d in dmin.max(1)..=dmax {
        if d > n || k == 0 {
            continue;
        }
        let db = residual_dbs
            .get(&d)
            .ok_or(Error::MissingResidualDb { n: n - d, k: k - 1, dperp })?;
        for r in db {
            if r.rows() != k - 1 || r.cols() != n - d {
                return Err(Error::ColumnLength { expected: n - d, got: r.cols() });
            }
            jobs.push((d, r));
        }
    }
    let parts = par::map(par, &jobs, |&(d, r)| -> Result<BTreeMap<CanonicalForm, BitMatrix>> {
        match residual_instance(r, d, dperp, even)? {
            Some(inst) => extend_residual(&inst, even),
            None => Ok(BTreeMap::new()),
        }
    });
    let mut merged = BTreeMap::new();
    for p in parts {
        for (f, m) in p? {
            merged.entry(f).or_insert(m);
        }
    }
    Ok(merged)
}
