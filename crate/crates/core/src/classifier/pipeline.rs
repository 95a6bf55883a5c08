//! Existence decision for `[n, k, d]` codes through their duals.
//!
//! An `[n, k, >= d]` code exists iff an `[n, n - k]` code with dual distance at
//! least `d` does. That family is looked up directly when it has been
//! classified at length `n`. Otherwise the minimum distance `w` of the dual
//! view code is bounded, and for each `w` every residual `[n - w, n - k - 1]`
//! code is handed to the proper-set search. For even `d` only codes whose dual
//! view contains the all-ones word (that is, even codes) are considered.

use std::fmt;
use std::path::PathBuf;

use super::db::{level_counts, load_family};
use super::{classify_dimension, ClassifyOptions, CodeDatabase};
use crate::bounds::{self, BoundsTable, LTable, Provenance, Target};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::metrics;
use crate::par::{self, Parallelism};
use crate::propersearch::{self, SearchMode, SearchOptions};

/// Families with at most this dimension may be classified on the fly.
pub const DESK_MAX_K: usize = 12;
/// Class-count guard for families classified on the fly.
pub const DESK_MAX_CODES: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exists,
    Nonexistent,
    /// A prerequisite classification is missing or incomplete.
    Unresolved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "EXISTS",
            Verdict::Nonexistent => "NONEXISTENT",
            Verdict::Unresolved => "UNRESOLVED",
        })
    }
}

/// Every intermediate count and decision, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub lines: Vec<String>,
    /// Prerequisites that were not available.
    pub missing: Vec<String>,
    /// A code witnessing existence, in the dual view.
    pub witness: Option<BitMatrix>,
}

impl Evidence {
    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        for m in &self.missing {
            writeln!(f, "missing: {m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PipelinePlan {
    /// Directory with CODEDB files.
    pub db_dir: Option<PathBuf>,
    pub bounds: BoundsTable,
    /// Classify small missing families in memory.
    pub desk_scale: bool,
    /// Skip the direct lookup and always go through residual codes.
    pub residual_only: bool,
    pub verify_dbs: bool,
    pub par: Parallelism,
}

impl Default for PipelinePlan {
    fn default() -> Self {
        Self {
            db_dir: None,
            bounds: BoundsTable::bundled(),
            desk_scale: false,
            residual_only: false,
            verify_dbs: false,
            par: Parallelism::default(),
        }
    }
}

/// Levels of one family, either loaded or classified on the fly, and whether
/// they reach length `upto` (or the family's end).
fn obtain_family(
    plan: &PipelinePlan,
    k: usize,
    dperp: usize,
    upto: usize,
    ev: &mut Evidence,
) -> Result<Option<Vec<CodeDatabase>>> {
    let covers = |dbs: &[CodeDatabase]| -> bool {
        let levels = level_counts(dbs);
        if bounds::l_value(&levels).is_some() {
            return true;
        }
        levels.iter().take_while(|l| l.complete).any(|l| l.n == upto)
    };
    if let Some(dir) = &plan.db_dir {
        let dbs = load_family(dir, k, dperp, false, plan.verify_dbs)?;
        if !dbs.is_empty() && covers(&dbs) {
            ev.note(format!("loaded family [n,{k}]^{dperp} for n = {}..{}", k, k + dbs.len() - 1));
            return Ok(Some(dbs));
        }
    }
    if plan.desk_scale && k <= DESK_MAX_K {
        let n_max = upto;
        let opts = ClassifyOptions { par: plan.par, max_codes: Some(DESK_MAX_CODES) };
        let dbs = classify_dimension(k, dperp, n_max, &opts)?;
        if covers(&dbs) {
            ev.note(format!("classified family [n,{k}]^{dperp} for n = {}..{}", k, k + dbs.len() - 1));
            return Ok(Some(dbs));
        }
        if dbs.iter().any(|db| !db.complete) {
            ev.note(format!("classifying [n,{k}]^{dperp} hit the {DESK_MAX_CODES}-class guard"));
        } else {
            ev.note(format!("family [n,{k}]^{dperp} does not terminate by n = {n_max}"));
        }
    }
    Ok(None)
}

fn count_line(dbs: &[CodeDatabase], ev: &mut Evidence) {
    let counts: Vec<String> = dbs
        .iter()
        .map(|d| format!("{}{}", d.count(), if d.starred() { "*" } else { "" }))
        .collect();
    if let Some(first) = dbs.first() {
        let p = first.params;
        ev.note(format!("counts [n,{}]^{} from n = {}: {}", p.k, p.dperp, p.n, counts.join(", ")));
    }
}

/// Decides whether `[n, k, d]` codes exist.
pub fn nonexistence_pipeline(target: Target, plan: &PipelinePlan) -> Result<(Verdict, Evidence)> {
    let Target { n, k, d } = target;
    if k == 0 || k > n || d == 0 {
        return Err(Error::Inconsistent(format!("invalid target {target}")));
    }
    let mut ev = Evidence::default();
    let kd = n - k;
    ev.note(format!("target {target}: dual view [{n},{kd}] with dual distance >= {d}"));
    if kd == 0 {
        let verdict = if d <= 1 { Verdict::Exists } else { Verdict::Nonexistent };
        ev.note("the full space has minimum distance 1");
        return Ok((verdict, ev));
    }
    let even = bounds::even_reduction_check(target).is_ok() && d >= 2;
    if even {
        ev.note(format!("d = {d} is even: only even codes are needed (dual view contains the all-ones word)"));
    } else if let Some(t) = bounds::parity_extension(target) {
        ev.note(format!("d = {d} is odd: equivalent to {t}"));
    }

    if !plan.residual_only {
        if let Some(dbs) = obtain_family(plan, kd, d, n, &mut ev)? {
            count_line(&dbs, &mut ev);
            let at_n = dbs.iter().find(|db| db.params.n == n);
            let mut codes: Vec<&BitMatrix> = at_n.map(|db| db.records.iter().map(|r| &r.matrix).collect()).unwrap_or_default();
            if even {
                codes.retain(|g| metrics::contains_all_ones(g).unwrap_or(false));
            }
            ev.note(format!(
                "[{n},{kd}]^{d}: {} classes{}",
                codes.len(),
                if even { " containing the all-ones word" } else { "" }
            ));
            return Ok(conclude(target, codes.first().map(|g| (*g).clone()), ev));
        }
        ev.note(format!("family [n,{kd}]^{d} not available at n = {n}; using residual codes"));
    }

    if kd < 2 {
        ev.missing.push(format!("family [n,{kd}]^{d} at n = {n}"));
        return Ok((Verdict::Unresolved, ev));
    }
    let kr = kd - 1;
    // Residual lengths run up to n - 1, so a family classified that far serves
    // even without a known L.
    let Some(family) = obtain_family(plan, kr, d, n - 1, &mut ev)? else {
        ev.missing.push(format!("family [n,{kr}]^{d} classified up to n = {} or to its maximum length", n - 1));
        if let Ok(range) = bounds::distance_range(n, kd, d, &LTable::published(), plan.bounds.get(n, kd)) {
            for w in range.iter() {
                ev.missing.push(format!("residual database [{},{kr}]^{d} for d = {w}", n - w));
            }
        }
        return Ok((Verdict::Unresolved, ev));
    };
    count_line(&family, &mut ev);
    let external = plan.bounds.get(n, kd);
    let range = match bounds::l_value(&level_counts(&family)) {
        Some(l) => {
            let mut ltable = LTable::new();
            ltable.insert(kr, d, l, Provenance::Computed);
            ev.note(format!("L({kr},{d}) = {l}"));
            bounds::distance_range(n, kd, d, &ltable, external)?
        }
        None => {
            ev.note(format!("L({kr},{d}) unknown; residual lengths up to {} are classified", n - 1));
            bounds::DistanceRange { dlo: 1, dhi: external.unwrap_or(n + 1 - kd) }
        }
    };
    ev.note(format!(
        "minimum distance of the dual view: {range} (upper end from {})",
        if external.is_some() { "the bounds table" } else { "the Singleton bound" }
    ));

    let mut jobs = Vec::new();
    for w in range.iter() {
        let len = n - w;
        let residuals: Vec<&BitMatrix> = family
            .iter()
            .find(|db| db.params.n == len)
            .map(|db| db.records.iter().map(|r| &r.matrix).collect())
            .unwrap_or_default();
        let mut kept = 0;
        for r in &residuals {
            if let Some(inst) = propersearch::residual_instance(r, w, d, even)? {
                kept += 1;
                jobs.push(inst);
            }
        }
        ev.note(format!(
            "d = {w}: {} residual codes [{len},{kr}]^{d}, {kept} with distance >= {}{}",
            residuals.len(),
            w.div_ceil(2),
            if even { " and the all-ones word" } else { "" }
        ));
    }
    let opts = SearchOptions { mode: SearchMode::Exists, pruning: true };
    let found = par::map(plan.par, &jobs, |inst| -> Result<Option<BitMatrix>> {
        if inst.d == 1 {
            return Ok(Some(inst.scaffold.clone()));
        }
        let out = propersearch::find_proper_sets(&inst.space, inst.d - 1, opts)?;
        Ok(out.sets.first().map(|s| propersearch::assemble_code(&inst.scaffold, s)))
    });
    let mut witness = None;
    for f in found {
        if let Some(g) = f? {
            witness.get_or_insert(g);
        }
    }
    ev.note(format!("searched {} residual instances", jobs.len()));
    Ok(conclude(target, witness, ev))
}

fn conclude(target: Target, witness: Option<BitMatrix>, mut ev: Evidence) -> (Verdict, Evidence) {
    match witness {
        Some(g) => {
            ev.note(format!("found an [{},{}] code with dual distance >= {}", g.cols(), g.rows(), target.d));
            ev.witness = Some(g);
            (Verdict::Exists, ev)
        }
        None => {
            for c in bounds::nonexistence_consequences(target) {
                ev.note(format!("implies {c}"));
            }
            (Verdict::Nonexistent, ev)
        }
    }
}
