//! Maximum lengths `L(k, dperp)`, minimum-distance ranges and the simple
//! reductions used to set up nonexistence searches.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Where an `L` value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Read off a complete classification run by this crate.
    Computed,
    /// A published value, used for cross-checks only.
    Published,
    /// Supplied from outside (configuration).
    External,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LEntry {
    pub value: usize,
    pub provenance: Provenance,
}

/// `L(k, dperp)`: the largest length of an `[n, k]` code with dual distance at
/// least `dperp`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LTable {
    entries: BTreeMap<(usize, usize), LEntry>,
}

impl LTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Published maximum lengths for dual distance 8 and 10.
    pub fn published() -> Self {
        let mut t = Self::new();
        for (k, l) in [(10, 12), (11, 16), (12, 24), (13, 25), (14, 28)] {
            t.insert(k, 8, l, Provenance::Published);
        }
        for (k, l) in [(14, 16), (15, 18), (16, 21), (17, 24), (18, 28)] {
            t.insert(k, 10, l, Provenance::Published);
        }
        t
    }

    pub fn insert(&mut self, k: usize, dperp: usize, value: usize, provenance: Provenance) {
        self.entries.insert((k, dperp), LEntry { value, provenance });
    }

    pub fn entry(&self, k: usize, dperp: usize) -> Option<LEntry> {
        self.entries.get(&(k, dperp)).copied()
    }

    pub fn get(&self, k: usize, dperp: usize) -> Option<usize> {
        self.entry(k, dperp).map(|e| e.value)
    }

    pub fn require(&self, k: usize, dperp: usize) -> Result<usize> {
        self.get(k, dperp).ok_or(Error::MissingL { k, dperp })
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), LEntry)> + '_ {
        self.entries.iter().map(|(&key, &e)| (key, e))
    }

    /// Pairs of entries that break `L(k, a) >= L(k, b)` for `a <= b`, or `L(k, _) >= k`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&(k, a), ea) in &self.entries {
            if ea.value < k {
                out.push(format!("L({k},{a}) = {} is below k", ea.value));
            }
            for (&(k2, b), eb) in self.entries.range((k, a + 1)..(k + 1, 0)) {
                debug_assert_eq!(k2, k);
                if ea.value < eb.value {
                    out.push(format!("L({k},{a}) = {} < L({k},{b}) = {}", ea.value, eb.value));
                }
            }
        }
        out
    }
}

/// Per-length class counts of one `(k, dperp)` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelCount {
    pub n: usize,
    pub count: usize,
    pub complete: bool,
}

/// `L` for a family, when it has been classified up to a length with no
/// codes and every level on the way is complete.
pub fn l_value(levels: &[LevelCount]) -> Option<usize> {
    let mut sorted = levels.to_vec();
    sorted.sort_by_key(|l| l.n);
    let mut last_nonzero = None;
    for (i, l) in sorted.iter().enumerate() {
        if !l.complete || (i > 0 && l.n != sorted[i - 1].n + 1) {
            return None;
        }
        if l.count == 0 {
            return last_nonzero;
        }
        last_nonzero = Some(l.n);
    }
    None
}

/// Inclusive range of candidate minimum distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceRange {
    pub dlo: usize,
    pub dhi: usize,
}

impl DistanceRange {
    pub fn is_empty(&self) -> bool {
        self.dlo > self.dhi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.dlo..=self.dhi
    }
}

impl fmt::Display for DistanceRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= d <= {}", self.dlo, self.dhi)
    }
}

/// Range for the minimum distance of an `[n, k]` code with dual distance at
/// least `dperp`. Deleting the support of a minimum-weight word leaves an
/// `[n - d, k - 1]` code with the same dual distance bound, so
/// `n - d <= L(k - 1, dperp)`. Without an external bound the upper end is the
/// Singleton bound.
pub fn distance_range(
    n: usize,
    k: usize,
    dperp: usize,
    ltable: &LTable,
    external_dhi: Option<usize>,
) -> Result<DistanceRange> {
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    let l = ltable.require(k - 1, dperp)?;
    let dlo = n.saturating_sub(l).max(1);
    let dhi = external_dhi.unwrap_or((n + 1).saturating_sub(k));
    Ok(DistanceRange { dlo, dhi })
}

/// Known upper bounds on the minimum distance, keyed by length and dimension.
///
/// Text format: one `n k dhi` triple per line; blank lines and `#` comments
/// are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsTable {
    dhi: BTreeMap<(usize, usize), usize>,
}

impl BoundsTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut dhi = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Bounds { line: i + 1, msg: format!("expected `n k dhi`, got {line:?}") });
            }
            let mut v = [0usize; 3];
            for (slot, f) in v.iter_mut().zip(&fields) {
                *slot = f
                    .parse()
                    .map_err(|_| Error::Bounds { line: i + 1, msg: format!("not an integer: {f:?}") })?;
            }
            if dhi.insert((v[0], v[1]), v[2]).is_some() {
                return Err(Error::Bounds { line: i + 1, msg: format!("duplicate entry for n={} k={}", v[0], v[1]) });
            }
        }
        Ok(Self { dhi })
    }

    /// The bounds bundled with the crate.
    pub fn bundled() -> Self {
        Self::parse(crate::fixtures::BOUNDS_TEXT).expect("bundled bounds parse")
    }

    pub fn get(&self, n: usize, k: usize) -> Option<usize> {
        self.dhi.get(&(n, k)).copied()
    }

    pub fn insert(&mut self, n: usize, k: usize, dhi: usize) {
        self.dhi.insert((n, k), dhi);
    }
}

/// An `[n, k, d]` parameter triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Target {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)
    }
}

/// Target restricted to even codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvenTarget(pub Target);

/// For even `d`, an `[n, k, d]` code exists iff an even one does (puncture a
/// coordinate and re-add an overall parity bit), so it suffices to rule out
/// even codes.
pub fn even_reduction_check(target: Target) -> Result<EvenTarget> {
    if target.d % 2 == 1 {
        return Err(Error::ReductionInapplicable(target.d));
    }
    Ok(EvenTarget(target))
}

/// For odd `d`, `[n, k, d]` codes exist iff `[n + 1, k, d + 1]` codes do.
pub fn parity_extension(target: Target) -> Option<Target> {
    (target.d % 2 == 1).then_some(Target { n: target.n + 1, k: target.k, d: target.d + 1 })
}

/// Statements implied by the nonexistence of `[n, k, d]` codes.
pub fn nonexistence_consequences(target: Target) -> Vec<String> {
    let Target { n, k, d } = target;
    let mut out = vec![
        format!("n2({k},{d}) >= {}", n + 1),
        format!("no [{},{},{d}] code (shortening)", n + 1, k + 1),
        format!("no [{},{k},{}] code (puncturing)", n + 1, d + 1),
    ];
    if d % 2 == 0 && d >= 2 {
        out.push(format!("no [{},{k},{}] code (parity extension)", n - 1, d - 1));
    }
    out
}

/// True iff `g` has no zero column.
pub fn zero_column_guard(g: &BitMatrix) -> bool {
    g.columns().iter().all(|&c| c != 0)
}
