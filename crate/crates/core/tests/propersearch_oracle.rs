//! The pruned proper-set search against exhaustive subset checks.

mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_proper_sets, dual_distance_at_least, is_p_proper};
use dualcode::propersearch::{
    build_search_space, extend_residual, find_proper_sets, residual_instance, SearchMode, SearchOptions,
};
use dualcode::{equivalence, metrics, BitMatrix};

struct Instance {
    a: BitMatrix,
    dperp: usize,
}

/// Random left blocks that already have the required dual distance.
fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(3..=6);
        let dperp = rng.gen_range(3..=5);
        let n = rng.gen_range(1..=k + 2);
        let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << k)).collect();
        let a = BitMatrix::from_columns(k, cols).unwrap();
        if dual_distance_at_least(&a, dperp) {
            out.push(Instance { a, dperp });
        }
    }
    out
}

/// Every leading-one vector, so the oracle does not rely on the library's
/// choice of admissible vectors.
fn leading_one_vectors(k: usize) -> Vec<u64> {
    (0..1u64 << k).filter(|x| x & 1 == 1).collect()
}

fn brute_sets(inst: &Instance, t: usize) -> BTreeSet<Vec<u64>> {
    let v = leading_one_vectors(inst.a.rows());
    brute_force_proper_sets(&inst.a, &v, t, inst.dperp)
        .into_iter()
        .map(|idx| idx.iter().map(|&i| v[i]).collect())
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    let mut nonempty = 0;
    for inst in random_instances(11, 60) {
        let space = build_search_space(&inst.a, inst.dperp, false).unwrap();
        assert!(space.len() <= 40);
        for t in 1..=4 {
            let expected = brute_sets(&inst, t);
            let got: BTreeSet<Vec<u64>> = find_proper_sets(&space, t, SearchOptions::default())
                .unwrap()
                .sets
                .into_iter()
                .map(|s| s.vectors)
                .collect();
            assert_eq!(got, expected, "A = {:?}, dperp = {}, t = {t}", inst.a.columns(), inst.dperp);
            nonempty += usize::from(!expected.is_empty());
        }
    }
    assert!(nonempty > 50, "instances too restrictive to be informative");
}

#[test]
fn pruning_does_not_change_results() {
    for inst in random_instances(12, 60) {
        let space = build_search_space(&inst.a, inst.dperp, false).unwrap();
        for t in 1..=5 {
            let on = find_proper_sets(&space, t, SearchOptions { mode: SearchMode::EnumerateAll, pruning: true }).unwrap();
            let off = find_proper_sets(&space, t, SearchOptions { mode: SearchMode::EnumerateAll, pruning: false }).unwrap();
            assert_eq!(on.sets, off.sets);
            assert!(on.nodes <= off.nodes);
        }
    }
}

#[test]
fn exists_mode_agrees_with_enumeration() {
    for inst in random_instances(13, 60) {
        let space = build_search_space(&inst.a, inst.dperp, false).unwrap();
        for t in 1..=5 {
            let all = find_proper_sets(&space, t, SearchOptions::default()).unwrap();
            let one = find_proper_sets(&space, t, SearchOptions { mode: SearchMode::Exists, pruning: true }).unwrap();
            assert_eq!(one.found, !all.sets.is_empty());
            assert!(one.sets.len() <= 1);
            if let Some(s) = one.sets.first() {
                assert!(all.sets.contains(s));
            }
        }
    }
}

/// `r[i]` equals the largest proper set inside the suffix starting at `i`,
/// capped at the target, computed by growing proper sets one vector at a time.
#[test]
fn r_vector_is_exact() {
    for inst in random_instances(14, 40) {
        let space = build_search_space(&inst.a, inst.dperp, false).unwrap();
        let v = space.vectors();
        if v.is_empty() {
            continue;
        }
        let p = inst.dperp - 1;
        let proper = |idx: &[usize]| {
            let mut all = inst.a.columns().to_vec();
            all.extend(idx.iter().map(|&i| v[i]));
            is_p_proper(&all, p)
        };
        for t in 1..=4 {
            // largest[i]: biggest proper set, at most t, whose first index is i.
            let mut largest = vec![0usize; v.len()];
            let mut layer: Vec<Vec<usize>> = (0..v.len()).filter(|&i| proper(&[i])).map(|i| vec![i]).collect();
            let mut size = 1;
            while !layer.is_empty() && size <= t {
                for s in &layer {
                    largest[s[0]] = largest[s[0]].max(size);
                }
                if size == t {
                    break;
                }
                let mut next = Vec::new();
                for s in &layer {
                    for j in s[size - 1] + 1..v.len() {
                        let mut c = s.clone();
                        c.push(j);
                        if proper(&c) {
                            next.push(c);
                        }
                    }
                }
                layer = next;
                size += 1;
            }
            let mut expected = vec![0; v.len()];
            let mut acc = 0;
            for i in (0..v.len()).rev() {
                acc = acc.max(largest[i]);
                expected[i] = acc;
            }
            let out = find_proper_sets(&space, t, SearchOptions::default()).unwrap();
            assert_eq!(out.r, expected, "A = {:?}, dperp = {}, t = {t}", inst.a.columns(), inst.dperp);
            assert_eq!(*out.r.last().unwrap(), 1);
            for w in out.r.windows(2) {
                assert!(w[0] >= w[1] && w[0] <= w[1] + 1);
            }
            assert!(out.r.iter().all(|&x| x <= t));
        }
    }
}

#[test]
fn every_found_set_is_proper() {
    for inst in random_instances(15, 40) {
        let space = build_search_space(&inst.a, inst.dperp, false).unwrap();
        for t in 1..=5 {
            for s in find_proper_sets(&space, t, SearchOptions::default()).unwrap().sets {
                let mut all = inst.a.columns().to_vec();
                all.extend(&s.vectors);
                assert!(is_p_proper(&all, inst.dperp - 1));
                assert!(s.vectors.iter().all(|x| x & 1 == 1));
                assert_eq!(s.indices.len(), t);
            }
        }
    }
}

#[test]
fn odd_only_space_keeps_odd_sets() {
    for inst in random_instances(16, 40) {
        let full = build_search_space(&inst.a, inst.dperp, false).unwrap();
        let odd = build_search_space(&inst.a, inst.dperp, true).unwrap();
        let expected: Vec<u64> = full.vectors().iter().copied().filter(|x| x.count_ones() % 2 == 1).collect();
        assert_eq!(odd.vectors(), expected.as_slice());
        for t in 1..=3 {
            let want: Vec<Vec<u64>> = find_proper_sets(&full, t, SearchOptions::default())
                .unwrap()
                .sets
                .into_iter()
                .map(|s| s.vectors)
                .filter(|s| s.iter().all(|x| x.count_ones() % 2 == 1))
                .collect();
            let got: Vec<Vec<u64>> =
                find_proper_sets(&odd, t, SearchOptions::default()).unwrap().sets.into_iter().map(|s| s.vectors).collect();
            assert_eq!(got, want);
        }
    }
}

/// The [7,3,4] simplex code is rebuilt from its residual, the [3,2,2] even
/// weight code, and is the only code the search produces. It lacks the
/// all-ones word, so the even variant must reject the residual.
#[test]
fn simplex_from_its_residual() {
    let simplex = BitMatrix::parse("1010101\n0110011\n0001111\n").unwrap();
    let residual = BitMatrix::parse("110\n011\n").unwrap();
    let inst = residual_instance(&residual, 4, 3, false).unwrap().expect("residual is admissible");
    let codes = extend_residual(&inst, false).unwrap();
    assert_eq!(codes.len(), 1);
    let g = codes.values().next().unwrap();
    assert!(equivalence::are_equivalent(g, &simplex).unwrap());
    assert_eq!(metrics::min_distance(g).unwrap(), 4);
    assert!(residual_instance(&residual, 4, 3, true).unwrap().is_none());
}
