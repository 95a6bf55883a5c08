//! Count tables over `(n, k)` for one dual distance threshold.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::CodeDatabase;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub count: usize,
    /// Some code in the cell has dual distance above the threshold.
    pub star: bool,
    pub complete: bool,
}

/// Class counts indexed by `(n, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableReport {
    pub dperp: Option<usize>,
    pub cells: BTreeMap<(usize, usize), TableCell>,
}

pub fn report_table(dbs: &[CodeDatabase]) -> TableReport {
    let mut report = TableReport::default();
    for db in dbs {
        report.dperp.get_or_insert(db.params.dperp);
        let cell = TableCell { count: db.count(), star: db.starred(), complete: db.complete };
        report.cells.insert((db.params.n, db.params.k), cell);
    }
    report
}

impl TableReport {
    pub fn cell(&self, n: usize, k: usize) -> Option<TableCell> {
        self.cells.get(&(n, k)).copied()
    }

    /// Counts of one column from `n = k` upwards, as far as it was classified.
    pub fn column(&self, k: usize) -> Vec<(usize, TableCell)> {
        self.cells.iter().filter(|(&(_, kk), _)| kk == k).map(|(&(n, _), &c)| (n, c)).collect()
    }

    /// Aligned text table: one row per length, one column per dimension.
    /// Cells past a column's last classified length are blank after a zero
    /// and `?` otherwise.
    pub fn render(&self) -> String {
        let ks: BTreeSet<usize> = self.cells.keys().map(|&(_, k)| k).collect();
        let Some(n_min) = self.cells.keys().map(|&(n, _)| n).min() else {
            return String::from("(no data)\n");
        };
        let n_max = self.cells.keys().map(|&(n, _)| n).max().unwrap_or(n_min);
        let last: BTreeMap<usize, (usize, usize)> = ks
            .iter()
            .map(|&k| {
                let col = self.column(k);
                let (n, c) = col.last().copied().expect("column has cells");
                (k, (n, c.count))
            })
            .collect();
        let text = |n: usize, k: usize| -> String {
            match self.cell(n, k) {
                Some(c) if !c.complete => "?".into(),
                Some(c) => format!("{}{}", c.count, if c.star { "*" } else { "" }),
                None if n < k => String::new(),
                None if last[&k].1 == 0 && n > last[&k].0 => String::new(),
                None => "?".into(),
            }
        };
        let width = ks
            .iter()
            .flat_map(|&k| (n_min..=n_max).map(move |n| (n, k)))
            .map(|(n, k)| text(n, k).len())
            .chain(ks.iter().map(|k| k.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{:>4} |", "n\\k");
        for k in &ks {
            let _ = write!(out, " {k:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{}", "-".repeat(6 + ks.len() * (width + 1)));
        for n in n_min..=n_max {
            let _ = write!(out, "{n:>4} |");
            for &k in &ks {
                let _ = write!(out, " {:>width$}", text(n, k));
            }
            out.push('\n');
        }
        out
    }

    /// One `n k dperp count star complete` line per cell.
    pub fn rows(&self) -> String {
        let mut out = String::new();
        // Cells only exist once some database has set the threshold.
        let dperp = self.dperp.unwrap_or_default();
        for (&(n, k), c) in &self.cells {
            let _ = writeln!(out, "{n} {k} {dperp} {} {} {}", c.count, u8::from(c.star), u8::from(c.complete));
        }
        out
    }
}

/// Number of inequivalent optimal `[n, n - k, dperp]` codes, read off the
/// table as `count(n, k) - count(n - 1, k - 1)`. Only defined for unstarred
/// cells.
pub fn derive_optimal_counts(table: &TableReport, n: usize, k: usize) -> Result<usize> {
    let cell = table.cell(n, k).filter(|c| c.complete).ok_or(Error::IncompleteCell { n, k })?;
    if cell.star {
        return Err(Error::StarredCell { n, k });
    }
    if n == 0 || k == 0 {
        return Err(Error::IncompleteCell { n, k });
    }
    let below = table.cell(n - 1, k - 1).filter(|c| c.complete).ok_or(Error::IncompleteCell { n: n - 1, k: k - 1 })?;
    cell.count.checked_sub(below.count).ok_or_else(|| {
        Error::Inconsistent(format!(
            "count({n},{k}) = {} is below count({},{}) = {}",
            cell.count,
            n - 1,
            k - 1,
            below.count
        ))
    })
}
