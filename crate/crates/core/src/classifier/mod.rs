//! Classification runs, code databases, tables and nonexistence checks.

mod db;
mod pipeline;
mod report;

use std::fmt;

use crate::equivalence::{self, CanonicalForm};
use crate::error::{Error, Result};
use crate::extension::{self, ExtensionStats};
use crate::gf2::BitMatrix;
use crate::metrics::{self, Distance, WeightEnumerator};
use crate::par::Parallelism;

pub use db::{db_file_name, load_db, load_family, save_db, CODEDB_VERSION};
pub use pipeline::{nonexistence_pipeline, Evidence, PipelinePlan, Verdict};
pub use report::{derive_optimal_counts, report_table, TableCell, TableReport};

/// Length, dimension and dual distance threshold of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub dperp: usize,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]^{}", self.n, self.k, self.dperp)
    }
}

/// One classified code with its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRecord {
    pub params: CodeParams,
    /// Canonical generator matrix.
    pub matrix: BitMatrix,
    pub canon: CanonicalForm,
    pub enumerator: WeightEnumerator,
    pub exact_dperp: Distance,
}

impl CodeRecord {
    /// Builds a record from a canonical form and its matrix; `dperp` is the
    /// family threshold.
    pub fn from_canonical(canon: CanonicalForm, matrix: BitMatrix, dperp: usize) -> Result<Self> {
        let (enumerator, dual) = metrics::enumerators(&matrix)?;
        let exact_dperp = if matrix.rows() == matrix.cols() { Distance::Inf } else { dual.min_distance() };
        Ok(Self {
            params: CodeParams { n: matrix.cols(), k: matrix.rows(), dperp },
            matrix,
            canon,
            enumerator,
            exact_dperp,
        })
    }

    /// Canonises an arbitrary full-rank generator matrix.
    pub fn from_matrix(g: &BitMatrix, dperp: usize) -> Result<Self> {
        let c = equivalence::canonize(g)?;
        Self::from_canonical(c.form, c.matrix, dperp)
    }

    pub fn min_distance(&self) -> Distance {
        self.enumerator.min_distance()
    }

    pub fn is_even(&self) -> bool {
        self.enumerator.coeffs().iter().step_by(2).sum::<u64>() == self.enumerator.total()
    }
}

/// All inequivalent codes of one length in a family, sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDatabase {
    pub params: CodeParams,
    /// False when classification stopped early; the records are then a subset.
    pub complete: bool,
    /// Only even codes were kept.
    pub even: bool,
    pub records: Vec<CodeRecord>,
}

impl CodeDatabase {
    pub fn new(params: CodeParams, complete: bool, mut records: Vec<CodeRecord>) -> Self {
        records.sort_by(|a, b| a.canon.cmp(&b.canon));
        Self { params, complete, even: false, records }
    }

    pub fn count(&self) -> usize {
        self.records.len()
    }

    /// Whether some record has dual distance above the family threshold.
    pub fn starred(&self) -> bool {
        self.records.iter().any(|r| r.exact_dperp > self.params.dperp)
    }

    pub fn matrices(&self) -> Vec<BitMatrix> {
        self.records.iter().map(|r| r.matrix.clone()).collect()
    }

    /// The even codes of this database.
    pub fn even_subset(&self) -> Self {
        let records = self.records.iter().filter(|r| r.is_even()).cloned().collect();
        Self { params: self.params, complete: self.complete, even: true, records }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub par: Parallelism,
    /// Stop, marking the level incomplete, when a level exceeds this many classes.
    pub max_codes: Option<usize>,
}

/// Per-length statistics from [`classify_dimension_with_stats`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub n: usize,
    pub extension: ExtensionStats,
}

/// Databases for `n = k, k + 1, ..` up to `n_max`, built by repeated one-column
/// extension from the `[k, k]` full space. Stops after the first empty level.
pub fn classify_dimension(k: usize, dperp: usize, n_max: usize, options: &ClassifyOptions) -> Result<Vec<CodeDatabase>> {
    Ok(classify_dimension_with_stats(k, dperp, n_max, options)?.0)
}

pub fn classify_dimension_with_stats(
    k: usize,
    dperp: usize,
    n_max: usize,
    options: &ClassifyOptions,
) -> Result<(Vec<CodeDatabase>, Vec<LevelStats>)> {
    classify_dimension_with(k, dperp, n_max, options, |_| Ok(()))
}

/// Like [`classify_dimension_with_stats`], calling `on_level` on each database
/// as soon as it is finished, so long runs can persist partial results.
pub fn classify_dimension_with(
    k: usize,
    dperp: usize,
    n_max: usize,
    options: &ClassifyOptions,
    mut on_level: impl FnMut(&CodeDatabase) -> Result<()>,
) -> Result<(Vec<CodeDatabase>, Vec<LevelStats>)> {
    if k > extension::MAX_MASK_DIM {
        return Err(Error::DimensionTooLarge { k, max: extension::MAX_MASK_DIM });
    }
    let mut dbs = Vec::new();
    let mut stats = Vec::new();
    if n_max < k {
        return Ok((dbs, stats));
    }
    let seed = CodeRecord::from_matrix(&BitMatrix::identity(k), dperp)?;
    let mut level = CodeDatabase::new(CodeParams { n: k, k, dperp }, true, vec![seed]);
    loop {
        let n = level.params.n;
        let stop = level.count() == 0 || n == n_max || !level.complete;
        on_level(&level)?;
        let inputs = level.records.clone();
        dbs.push(level);
        if stop {
            break;
        }
        let (records, s) = extension::bruteforce_extend_all_with_stats(&inputs, dperp, options.par)?;
        stats.push(LevelStats { n: n + 1, extension: s });
        let complete = options.max_codes.is_none_or(|m| records.len() <= m);
        level = CodeDatabase::new(CodeParams { n: n + 1, k, dperp }, complete, records);
    }
    Ok((dbs, stats))
}
