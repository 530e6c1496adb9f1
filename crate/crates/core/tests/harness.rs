use std::collections::BTreeSet;

use isofact::classify;
use isofact::explore::{self, betti_divisible_up_to, enumerate_numerical_by_genus};
use isofact::Exec;

#[test]
fn genus_15_corpus_has_no_violations() {
    let mut corpus = enumerate_numerical_by_genus(15, Exec::Parallel).unwrap();
    assert_eq!(corpus.len(), 6964);
    corpus.extend(explore::chain_witness_gluings().unwrap());
    let r = explore::run_theorem_harness(&corpus, Exec::Parallel);
    assert_eq!(r.violation_count(), 0, "{:#?}", &r.violations[..r.violations.len().min(5)]);
    assert!(r.strictness_witnessed(), "{:?}", r.strictness);
    let members: Vec<usize> = r.chain_members.iter().map(|(_, n)| *n).collect();
    assert!(members.windows(2).all(|w| w[0] < w[1]), "{members:?}");
    assert!(r.theorems.values().all(|t| t.violated == 0));
    assert!(r.bounds.values().all(|b| b.failed == 0));
}

/// Betti divisible semigroups are complete intersections, hence symmetric,
/// so genus at most 20 covers Frobenius number at most 40.
#[test]
fn divisible_search_matches_classification() {
    let corpus = enumerate_numerical_by_genus(20, Exec::Parallel).unwrap();
    let symmetric: Vec<Vec<u64>> = corpus
        .entries
        .iter()
        .filter(|e| e.generators.len() >= 2)
        .filter_map(|e| {
            let s = e.semigroup().unwrap();
            let f = s.frobenius().unwrap();
            (f <= 40 && f + 1 == 2 * s.genus().unwrap() as i64).then(|| s.scalar_gens())
        })
        .collect();
    let classified: BTreeSet<Vec<u64>> = Exec::Parallel
        .map(&symmetric, |g| {
            let s = isofact::Semigroup::numerical(g).unwrap();
            classify::classify(&s).unwrap().betti_divisible.is_true().then(|| {
                let mut g = g.clone();
                g.sort_unstable();
                g
            })
        })
        .into_iter()
        .flatten()
        .collect();
    let searched: BTreeSet<Vec<u64>> = betti_divisible_up_to(2, 40, Exec::Parallel).unwrap().into_iter().map(|h| h.generators).collect();
    assert_eq!(classified, searched);
    // least Frobenius number with three generators
    let h = explore::min_frobenius_betti_divisible(3, 40, 1, Exec::Sequential).unwrap();
    assert_eq!((h.frobenius, h.generators), (29, vec![6, 10, 15]));
}
