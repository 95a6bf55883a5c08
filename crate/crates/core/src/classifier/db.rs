//! CODEDB text files.
//!
//! ```text
//! codedb 1 n=<n> k=<k> dperp=<t> count=<c> complete=<0|1>
//! <canonical form>
//! ...
//! ```
//!
//! Records are listed in ascending canonical order, one per line. Databases
//! holding only even codes add ` even=1` to the header and use an `even_`
//! file name prefix.

use std::fs;
use std::path::{Path, PathBuf};

use super::{CodeDatabase, CodeParams, CodeRecord};
use crate::bounds::LevelCount;
use crate::equivalence::{self, CanonicalForm};
use crate::error::{Error, Result};
use crate::metrics;

pub const CODEDB_VERSION: &str = "1";

pub fn db_file_name(params: &CodeParams, even: bool) -> String {
    let prefix = if even { "even_" } else { "" };
    format!("{prefix}n{}_k{}_dperp{}.codedb", params.n, params.k, params.dperp)
}

fn render(db: &CodeDatabase) -> String {
    let p = &db.params;
    let mut s = format!(
        "codedb {CODEDB_VERSION} n={} k={} dperp={} count={} complete={}",
        p.n,
        p.k,
        p.dperp,
        db.count(),
        u8::from(db.complete)
    );
    if db.even {
        s.push_str(" even=1");
    }
    s.push('\n');
    for r in &db.records {
        s.push_str(r.canon.as_str());
        s.push('\n');
    }
    s
}

/// Writes `db` into `dir` under its standard name and returns the path.
pub fn save_db(db: &CodeDatabase, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(db_file_name(&db.params, db.even));
    fs::write(&path, render(db))?;
    Ok(path)
}

struct Header {
    params: CodeParams,
    count: usize,
    complete: bool,
    even: bool,
}

fn parse_header(path: &Path, line: &str) -> Result<Header> {
    let malformed = |msg: String| Error::MalformedDb { path: path.to_path_buf(), msg };
    let mut fields = line.split(' ');
    if fields.next() != Some("codedb") {
        return Err(malformed("missing `codedb` header".into()));
    }
    let version = fields.next().ok_or_else(|| malformed("missing version".into()))?;
    if version != CODEDB_VERSION {
        return Err(Error::DbVersion { path: path.to_path_buf(), found: version.to_string() });
    }
    let mut values = [None::<usize>; 6];
    const KEYS: [&str; 6] = ["n", "k", "dperp", "count", "complete", "even"];
    for f in fields {
        let (key, value) = f.split_once('=').ok_or_else(|| malformed(format!("bad header field {f:?}")))?;
        let slot = KEYS
            .iter()
            .position(|&k| k == key)
            .ok_or_else(|| malformed(format!("unknown header key {key:?}")))?;
        if values[slot].is_some() {
            return Err(malformed(format!("repeated header key {key:?}")));
        }
        let v = value.parse().map_err(|_| malformed(format!("bad value for {key}: {value:?}")))?;
        values[slot] = Some(v);
    }
    let need = |i: usize| values[i].ok_or_else(|| malformed(format!("missing header key {:?}", KEYS[i])));
    let flag = |v: usize, key: &str| match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(malformed(format!("{key} must be 0 or 1"))),
    };
    Ok(Header {
        params: CodeParams { n: need(0)?, k: need(1)?, dperp: need(2)? },
        count: need(3)?,
        complete: flag(need(4)?, "complete")?,
        even: flag(values[5].unwrap_or(0), "even")?,
    })
}

/// Reads a database. The header, record syntax, count and ordering are always
/// checked; `verify` additionally recomputes each canonical form and checks
/// rank, dual distance and (for even databases) evenness.
pub fn load_db(path: &Path, verify: bool) -> Result<CodeDatabase> {
    let text = fs::read_to_string(path)?;
    let malformed = |msg: String| Error::MalformedDb { path: path.to_path_buf(), msg };
    let failed = |msg: String| Error::DbVerification { path: path.to_path_buf(), msg };
    if !text.ends_with('\n') {
        return Err(malformed("file does not end with a newline (truncated?)".into()));
    }
    let mut lines = text.lines();
    let header = parse_header(path, lines.next().unwrap_or(""))?;
    let CodeParams { n, k, dperp } = header.params;
    let mut records: Vec<CodeRecord> = Vec::with_capacity(header.count);
    for (i, line) in lines.enumerate() {
        let form = CanonicalForm::parse(n, k, line).map_err(|e| malformed(format!("record {}: {e}", i + 1)))?;
        if let Some(prev) = records.last() {
            if prev.canon >= form {
                return Err(failed(format!("record {} is out of canonical order or repeated", i + 1)));
            }
        }
        let matrix = form.to_matrix();
        if matrix.rank() != k {
            return Err(failed(format!("record {} has rank {} < {k}", i + 1, matrix.rank())));
        }
        records.push(CodeRecord::from_canonical(form, matrix, dperp)?);
    }
    if records.len() != header.count {
        return Err(failed(format!("header count {} but {} records", header.count, records.len())));
    }
    if verify {
        for (i, r) in records.iter().enumerate() {
            if !r.exact_dperp.at_least(dperp) {
                return Err(failed(format!("record {} has dual distance {}", i + 1, r.exact_dperp)));
            }
            if equivalence::canonical_form(&r.matrix)? != r.canon {
                return Err(failed(format!("record {} is not in canonical form", i + 1)));
            }
            if header.even && !metrics::is_even(&r.matrix) {
                return Err(failed(format!("record {} is not even", i + 1)));
            }
        }
    }
    Ok(CodeDatabase { params: header.params, complete: header.complete, even: header.even, records })
}

/// Loads the consecutive databases `n = k, k + 1, ..` of one family present in `dir`.
pub fn load_family(dir: &Path, k: usize, dperp: usize, even: bool, verify: bool) -> Result<Vec<CodeDatabase>> {
    let mut out = Vec::new();
    for n in k.. {
        let path = dir.join(db_file_name(&CodeParams { n, k, dperp }, even));
        if !path.exists() {
            break;
        }
        let db = load_db(&path, verify)?;
        let empty = db.count() == 0;
        out.push(db);
        if empty {
            break;
        }
    }
    Ok(out)
}

pub(crate) fn level_counts(dbs: &[CodeDatabase]) -> Vec<LevelCount> {
    dbs.iter().map(|d| LevelCount { n: d.params.n, count: d.count(), complete: d.complete }).collect()
}
