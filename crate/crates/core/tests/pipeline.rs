//! Residual-based classification and existence verdicts against direct
//! enumeration.

use std::collections::{BTreeMap, BTreeSet};

use dualcode::bounds::Target;
use dualcode::classifier::{
    classify_dimension, load_family, nonexistence_pipeline, save_db, ClassifyOptions, PipelinePlan, Verdict,
};
use dualcode::par::Parallelism;
use dualcode::propersearch::{classify_via_residuals, ResidualTarget};
use dualcode::metrics;

fn seq() -> ClassifyOptions {
    ClassifyOptions { par: Parallelism::sequential(), max_codes: None }
}

/// Largest minimum distance of an `[n, k]` code, over all systematic
/// generators `[I | P]` (every code is equivalent to one).
fn best_distance(n: usize, k: usize) -> usize {
    let r = n - k;
    let mut best = 0;
    for p in 0u64..1 << (k * r) {
        let rows: Vec<u64> = (0..k).map(|i| (1u64 << i) | (((p >> (i * r)) & ((1 << r) - 1)) << k)).collect();
        let mut d = n;
        for m in 1u64..1 << k {
            let w = (0..k).filter(|&i| m >> i & 1 == 1).fold(0, |a, i| a ^ rows[i]);
            d = d.min(w.count_ones() as usize);
        }
        best = best.max(d);
    }
    best
}

#[test]
fn residual_route_reproduces_direct_classification() {
    for (k, dperp, n_max) in [(3, 3, 8), (4, 3, 10), (4, 4, 10), (5, 4, 12), (5, 5, 12)] {
        let family = classify_dimension(k, dperp, n_max, &seq()).unwrap();
        let residuals = classify_dimension(k - 1, dperp, n_max, &seq()).unwrap();
        for db in &family[1..] {
            let n = db.params.n;
            let mut res_dbs = BTreeMap::new();
            for d in 1..=n {
                let codes = residuals.iter().find(|r| r.params.n + d == n).map(|r| r.matrices()).unwrap_or_default();
                res_dbs.insert(d, codes);
            }
            for even in [false, true] {
                let expected: BTreeSet<_> = db
                    .records
                    .iter()
                    .filter(|r| !even || metrics::contains_all_ones(&r.matrix).unwrap())
                    .map(|r| r.canon.clone())
                    .collect();
                let target = ResidualTarget { n, k, dperp, dmin: 1, dmax: n, even };
                let got: BTreeSet<_> =
                    classify_via_residuals(&res_dbs, &target, Parallelism::sequential()).unwrap().into_keys().collect();
                assert_eq!(got, expected, "[{n},{k}]^{dperp} even={even}");
            }
        }
    }
}

#[test]
fn verdicts_match_brute_force() {
    for n in 4..=9 {
        for k in 2..=4.min(n - 1) {
            let best = best_distance(n, k);
            for d in 2..=best + 1 {
                let target = Target { n, k, d };
                let expected = if d <= best { Verdict::Exists } else { Verdict::Nonexistent };
                // With n - k = 1 there is no residual family to search.
                let routes: &[bool] = if n - k >= 2 { &[false, true] } else { &[false] };
                for &residual_only in routes {
                    let plan = PipelinePlan {
                        desk_scale: true,
                        residual_only,
                        par: Parallelism::sequential(),
                        ..Default::default()
                    };
                    let (v, ev) = nonexistence_pipeline(target, &plan).unwrap();
                    assert_eq!(v, expected, "{target} residual_only={residual_only}\n{ev}");
                    if let Some(g) = &ev.witness {
                        assert!(metrics::dual_distance(g).unwrap().at_least(d));
                        assert_eq!((g.cols(), g.rows()), (n, n - k));
                    }
                }
            }
        }
    }
}

#[test]
fn databases_on_disk_are_used() {
    let dir = tempfile::tempdir().unwrap();
    for db in classify_dimension(4, 4, 20, &seq()).unwrap() {
        save_db(&db, dir.path()).unwrap();
    }
    assert!(!load_family(dir.path(), 4, 4, false, true).unwrap().is_empty());
    // [8,4,4] extended Hamming: its dual view is an [8,4]^4 code.
    let plan = PipelinePlan { db_dir: Some(dir.path().to_path_buf()), par: Parallelism::sequential(), ..Default::default() };
    let (v, ev) = nonexistence_pipeline(Target { n: 8, k: 4, d: 4 }, &plan).unwrap();
    assert_eq!(v, Verdict::Exists);
    assert!(ev.lines.iter().any(|l| l.starts_with("loaded family")));
    // Neither [9,5]^5 nor [n,4]^5 is on disk, and desk-scale is off.
    let (v, _) = nonexistence_pipeline(Target { n: 9, k: 4, d: 5 }, &plan).unwrap();
    assert_eq!(v, Verdict::Unresolved);
}

#[test]
fn classification_is_deterministic() {
    let a = classify_dimension(6, 4, 16, &seq()).unwrap();
    let b = classify_dimension(6, 4, 16, &ClassifyOptions { par: Parallelism::jobs(4), max_codes: None }).unwrap();
    assert_eq!(a, b);
    let plan = PipelinePlan { desk_scale: true, residual_only: true, ..Default::default() };
    let t = Target { n: 12, k: 6, d: 4 };
    let first = nonexistence_pipeline(t, &plan).unwrap();
    let second = nonexistence_pipeline(t, &PipelinePlan { par: Parallelism::sequential(), ..plan.clone() }).unwrap();
    assert_eq!(first, second);
}

#[test]
fn generator_matrices_in_databases_are_full_rank() {
    for db in classify_dimension(5, 4, 14, &seq()).unwrap() {
        for g in db.matrices() {
            assert_eq!(g.rank(), g.rows());
        }
    }
}
