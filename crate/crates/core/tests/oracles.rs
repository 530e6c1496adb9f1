mod common;

use std::collections::BTreeSet;

use isofact::explore::{count_by_genus, enumerate_numerical_by_genus};
use isofact::{betti, factor, isolated, Exec, NatVec, Semigroup};

fn ns(g: &[u64]) -> Semigroup {
    Semigroup::numerical(g).unwrap()
}

fn lib_betti(s: &Semigroup) -> Vec<u64> {
    betti::betti_profile(s).unwrap().values().iter().map(|v| v[0]).collect()
}

fn lib_classes(f: &factor::Fiber) -> Vec<Vec<Vec<u64>>> {
    let mut out: Vec<Vec<Vec<u64>>> = f
        .classes
        .iter()
        .map(|c| {
            let mut v: Vec<Vec<u64>> = c.iter().map(|&i| f.factorizations[i].coords().to_vec()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

#[test]
fn frozen_betti_values() {
    let table: [(&[u64], &[u64]); 8] = [
        (&[2, 3], &[6]),
        (&[3, 4, 5], &[8, 9, 10]),
        (&[3, 5, 7], &[10, 12, 14]),
        (&[4, 6, 9], &[12, 18]),
        (&[6, 10, 15], &[30]),
        (&[16, 20, 30, 45], &[60, 80, 90]),
        (&[24, 26, 36, 39], &[72, 78, 156]),
        (&[30, 42, 105, 140], &[210, 420]),
    ];
    for (g, b) in table {
        assert_eq!(lib_betti(&ns(g)), b, "{g:?}");
        if g.iter().max().unwrap() < &50 {
            assert_eq!(common::betti_numerical(g), b, "{g:?}");
        }
    }
}

#[test]
fn betti_matches_sweep_up_to_frobenius_60() {
    let mut corpus: Vec<Vec<u64>> = enumerate_numerical_by_genus(8, Exec::Sequential)
        .unwrap()
        .entries
        .iter()
        .filter(|e| e.generators.len() >= 2)
        .map(|e| e.generators.iter().map(|v| v[0]).collect())
        .collect();
    corpus.extend(common::small_semigroups(3, 30, 60));
    corpus.extend(common::small_semigroups(4, 22, 60));

    let mut total = 0;
    for g in &corpus {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        let brute = common::betti_numerical(&sorted);
        assert_eq!(lib_betti(&ns(g)), brute, "{g:?}");
        total += brute.len();
    }
    // frozen: total Betti elements over the corpus
    assert_eq!((corpus.len(), total), (1832, 8029));
}

#[test]
fn r_classes_match_closure() {
    let mut fibers = 0;
    for g in [&[3u64, 4, 5][..], &[4, 6, 9], &[5, 7, 9, 11], &[6, 7, 8, 9, 10], &[16, 20, 30, 45], &[7, 9, 10, 12]] {
        let s = ns(g);
        for m in 0..=120u64 {
            let brute = common::factorizations(g, m);
            if brute.is_empty() || brute.len() > 50 {
                continue;
            }
            let f = factor::fiber(&s, &NatVec::scalar(m)).unwrap();
            let facts: Vec<Vec<u64>> = f.factorizations.iter().map(|x| x.coords().to_vec()).collect();
            assert_eq!(facts, brute, "{g:?} at {m}");
            assert_eq!(lib_classes(&f), common::r_classes(&brute), "{g:?} at {m}");
            fibers += 1;
        }
    }
    assert_eq!(fibers, 482);
}

#[test]
fn genus_counts_match_gap_sets() {
    let frozen = [1usize, 1, 2, 4, 7, 12, 23, 39, 67, 118];
    assert_eq!(common::genus_counts(9), frozen);
    assert_eq!(count_by_genus(9, Exec::Sequential).unwrap(), frozen);
    let more = count_by_genus(15, Exec::Parallel).unwrap();
    assert_eq!(&more[10..], [204, 343, 592, 1001, 1693, 2857]);
}

#[test]
fn unique_factorizations_match() {
    for g in [&[3u64, 4, 5][..], &[4, 6, 9], &[5, 7, 9, 11], &[6, 10, 15]] {
        let s = ns(g);
        let lib: Vec<Vec<u64>> = isolated::is_set(&s).unwrap().factorizations.iter().map(|x| x.coords().to_vec()).collect();
        let f = common::frobenius(g) as u64;
        let brute = common::unique_factorizations(g, f + 2 * g.iter().max().unwrap());
        assert_eq!(lib, brute, "{g:?}");
    }
    assert_eq!(isolated::is_set(&ns(&[3, 4, 5])).unwrap().len(), 6);
}

fn vecs(text: &[&[u64]]) -> Vec<Vec<u64>> {
    text.iter().map(|v| v.to_vec()).collect()
}

#[test]
fn affine_goldens_match_brute_force() {
    let a = vecs(&[&[1, 0], &[0, 2], &[0, 3]]);
    let s = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
    let p = betti::betti_profile(&s).unwrap();
    let lib: BTreeSet<Vec<u64>> = p.values().iter().map(|v| v.coords().to_vec()).collect();
    assert_eq!(lib, common::affine_betti(&a, 12));
    let ib: BTreeSet<Vec<u64>> = isolated::ib_from(&p).factorizations.iter().map(|x| x.coords().to_vec()).collect();
    assert_eq!(ib, common::affine_ib(&a, 12));
    assert_eq!(ib, BTreeSet::from([vec![0, 3, 0], vec![0, 0, 2]]));
    assert_eq!(isolated::c_atoms(&s).unwrap().keys().map(|i| i + 1).collect::<Vec<_>>(), [2, 3]);

    let m = vecs(&[&[1, 0, 1], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
    let s = Semigroup::parse("(1,0,1);(0,1,0);(1,1,0);(0,0,1)").unwrap();
    let p = betti::betti_profile_bounded(&s, Some(8)).unwrap();
    assert!(!p.complete);
    let lib: BTreeSet<Vec<u64>> = p.values().iter().map(|v| v.coords().to_vec()).collect();
    assert_eq!(lib, common::affine_betti(&m, 8));
    assert_eq!(lib, BTreeSet::from([vec![1, 1, 1]]));
    assert!(isolated::c_atoms(&s).unwrap().is_empty());
}
