//! Corpora of semigroups, enumeration by genus, the Betti divisible
//! parameter search and the theorem harness.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::classify::{self, BoundStatus, CheckKind, Condition};
use crate::constants;
use crate::construct::{self, BettiDivisibleParams, GluingSpec};
use crate::error::{Error, Result};
use crate::natvec::{format_generators, parse_generators, NatVec};
use crate::par::Exec;
use crate::semigroup::Semigroup;

pub const DEFAULT_GENUS_CAP: u32 = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    EnumeratedByGenus { genus: u32 },
    File { path: String },
    Constructed { how: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    /// Minimal generators.
    pub generators: Vec<NatVec>,
    pub provenance: Provenance,
}

impl CorpusEntry {
    pub fn semigroup(&self) -> Result<Semigroup> {
        Semigroup::new(self.generators.clone())
    }

    pub fn label(&self) -> String {
        format!("<{}>", format_generators(&self.generators))
    }
}

/// Semigroups without duplicates, compared by minimal generator multiset.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    #[serde(skip)]
    keys: BTreeSet<Vec<NatVec>>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds a semigroup after reducing to minimal generators; `false` if it
    /// was already present.
    pub fn push(&mut self, gens: Vec<NatVec>, provenance: Provenance) -> Result<bool> {
        let s = Semigroup::new(gens)?;
        Ok(self.push_minimal(s.gens().to_vec(), provenance))
    }

    fn push_minimal(&mut self, generators: Vec<NatVec>, provenance: Provenance) -> bool {
        let mut key = generators.clone();
        key.sort();
        if !self.keys.insert(key) {
            return false;
        }
        self.entries.push(CorpusEntry { generators, provenance });
        true
    }

    /// One semigroup per line; `#` starts a comment.
    pub fn from_text(text: &str, path: &str) -> Result<Corpus> {
        let mut c = Corpus::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let gens = parse_generators(line).map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
            c.push(gens, Provenance::File { path: path.to_string() })?;
        }
        Ok(c)
    }

    pub fn extend(&mut self, other: Corpus) {
        for e in other.entries {
            self.push_minimal(e.generators, e.provenance);
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    /// Bit `k` set when `k` is a gap.
    gaps: u64,
    frobenius: i64,
    gens: Vec<u64>,
}

impl Node {
    fn member(&self, x: u64) -> bool {
        x as i64 > self.frobenius || self.gaps >> x & 1 == 0
    }

    fn children(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for &x in &self.gens {
            if (x as i64) <= self.frobenius || x >= 64 {
                continue;
            }
            let mut child = Node { gaps: self.gaps | 1 << x, frobenius: x as i64, gens: Vec::new() };
            let m = (1..).find(|&y| child.member(y)).unwrap();
            for y in m..=x + m {
                if child.member(y) && !(1..=y / 2).any(|a| child.member(a) && child.member(y - a)) {
                    child.gens.push(y);
                }
            }
            out.push(child);
        }
        out
    }
}

/// Every numerical semigroup of genus at most `g_max`, from the tree of
/// removals of generators above the Frobenius number. Sorted by genus,
/// then by generators.
pub fn enumerate_numerical_by_genus(g_max: u32, exec: Exec) -> Result<Corpus> {
    enumerate_with_cap(g_max, DEFAULT_GENUS_CAP, exec)
}

pub fn enumerate_with_cap(g_max: u32, cap: u32, exec: Exec) -> Result<Corpus> {
    if g_max > cap || g_max > 31 {
        return Err(Error::GenusCapExceeded { requested: g_max, cap: cap.min(31) });
    }
    let mut level = vec![Node { gaps: 0, frobenius: -1, gens: vec![1] }];
    let mut corpus = Corpus::new();
    for genus in 0..=g_max {
        let mut sorted = level.clone();
        sorted.sort_by(|a, b| a.gens.cmp(&b.gens));
        for n in &sorted {
            corpus.push_minimal(n.gens.iter().map(|&g| NatVec::scalar(g)).collect(), Provenance::EnumeratedByGenus { genus });
        }
        if genus < g_max {
            level = exec.map(&level, Node::children).into_iter().flatten().collect();
        }
    }
    Ok(corpus)
}

/// Number of numerical semigroups of each genus `0..=g_max`.
pub fn count_by_genus(g_max: u32, exec: Exec) -> Result<Vec<usize>> {
    let c = enumerate_numerical_by_genus(g_max, exec)?;
    let mut v = vec![0; g_max as usize + 1];
    for e in &c.entries {
        if let Provenance::EnumeratedByGenus { genus } = e.provenance {
            v[genus as usize] += 1;
        }
    }
    Ok(v)
}

/// A Betti divisible numerical semigroup found by the parameter search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibleHit {
    pub frobenius: i64,
    /// Ascending.
    pub generators: Vec<u64>,
    pub params: BettiDivisibleParams,
}

fn coprime_tuples(limit: u64, prefix: &mut Vec<u64>, product: u64, out: &mut Vec<Vec<u64>>) {
    if prefix.len() >= 2 {
        out.push(prefix.clone());
    }
    let mut a = 2;
    while product * a <= limit {
        if prefix.iter().all(|&b| b.gcd(&a) == 1) {
            prefix.push(a);
            coprime_tuples(limit, prefix, product * a, out);
            prefix.pop();
        }
        a += 1;
    }
}

fn f_chains(a: &[u64], p: u64, f_max: i64, f: &mut Vec<u64>, acc: i64, out: &mut Vec<(Vec<u64>, i64)>) {
    let i = f.len();
    if i == a.len() {
        out.push((f.clone(), acc));
        return;
    }
    let base = if i < 2 { 1 } else { f[i - 1] };
    let mut k = 1;
    loop {
        let fi = base * k;
        if i < 2 && fi != 1 {
            return;
        }
        let n = fi as i128 * (p / a[i]) as i128;
        let next = if i == 0 { -(n as i64) } else { acc + ((a[i] as i128 - 1) * n).min(i64::MAX as i128 / 4) as i64 };
        if i > 0 && next > f_max {
            return;
        }
        if fi.gcd(&a[i]) == 1 {
            f.push(fi);
            f_chains(a, p, f_max, f, next, out);
            f.pop();
        }
        k += 1;
    }
}

/// Every Betti divisible numerical semigroup with embedding dimension at
/// least `edim_min` and Frobenius number at most `f_max`, sorted by
/// Frobenius number then generators. The parametrization covers every Betti
/// divisible semigroup, and `F >= prod(a) / 2 - 2` bounds the parameters.
pub fn betti_divisible_up_to(edim_min: usize, f_max: i64, exec: Exec) -> Result<Vec<DivisibleHit>> {
    if edim_min < 2 {
        return Err(Error::InvalidParams("edim_min must be at least 2".into()));
    }
    if f_max < 1 {
        return Ok(Vec::new());
    }
    let limit = 2 * f_max as u64 + 4;
    let mut tuples = Vec::new();
    coprime_tuples(limit, &mut Vec::new(), 1, &mut tuples);
    tuples.retain(|t| t.len() >= edim_min);
    let found: Vec<Vec<DivisibleHit>> = exec.map(&tuples, |a| {
        let p: u64 = a.iter().product();
        let mut chains = Vec::new();
        f_chains(a, p, f_max, &mut Vec::new(), 0, &mut chains);
        chains
            .into_iter()
            .filter_map(|(f, fr)| {
                let params = BettiDivisibleParams { a: a.clone(), f };
                let mut generators = params.generators().ok()?;
                generators.sort_unstable();
                Some(DivisibleHit { frobenius: fr, generators, params })
            })
            .collect()
    });
    let mut best: BTreeMap<Vec<u64>, DivisibleHit> = BTreeMap::new();
    for h in found.into_iter().flatten() {
        best.entry(h.generators.clone()).or_insert(h);
    }
    let mut out: Vec<DivisibleHit> = best.into_values().collect();
    out.sort_by(|x, y| (x.frobenius, &x.generators).cmp(&(y.frobenius, &y.generators)));
    Ok(out)
}

/// The Betti divisible numerical semigroup with at least `edim_min`
/// generators and at least `min_betti` Betti elements of least Frobenius
/// number (ties: smallest generators).
///
/// With `min_betti = 1` single Betti semigroups such as `<30,42,70,105>`
/// (Frobenius number 383) count; they are trivially Betti divisible.
pub fn min_frobenius_betti_divisible(edim_min: usize, f_max: i64, min_betti: usize, exec: Exec) -> Result<DivisibleHit> {
    let hits = betti_divisible_up_to(edim_min, f_max, exec)?;
    for h in hits {
        if h.params.predicted_betti()?.len() >= min_betti {
            return Ok(h);
        }
    }
    Err(Error::EmptySearch)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub semigroup: String,
    pub theorem: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    /// Every condition true.
    pub all_true: usize,
    /// For implications: premise false.
    pub all_false: usize,
    pub violated: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub tight: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Strictness {
    pub smaller: &'static str,
    pub larger: &'static str,
    /// First semigroup, in corpus order, in the larger family only.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CBarStats {
    pub free: usize,
    /// Free semigroups whose first free arrangement has `c_i = c_bar_i`.
    pub c_equals_c_bar: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub semigroups: usize,
    pub theorem_checks: usize,
    pub bound_checks: usize,
    pub violations: Vec<Violation>,
    pub theorems: BTreeMap<String, Tally>,
    pub bounds: BTreeMap<String, BoundTally>,
    /// Members of each family of the chain, in chain order.
    pub chain_members: Vec<(String, usize)>,
    pub strictness: Vec<Strictness>,
    pub c_bar: CBarStats,
}

impl HarnessReport {
    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }

    pub fn strictness_witnessed(&self) -> bool {
        self.strictness.iter().all(|s| s.witness.is_some())
    }
}

struct Outcome {
    label: String,
    checks: Vec<classify::TheoremCheck>,
    bounds: Vec<classify::BoundCheck>,
    chain: Option<[bool; 7]>,
    chain_broken: Vec<(&'static str, &'static str)>,
    c_bar: Option<bool>,
}

fn evaluate(entry: &CorpusEntry) -> std::result::Result<Outcome, (String, String)> {
    let label = entry.label();
    let fail = |e: Error| (label.clone(), e.to_string());
    let s = entry.semigroup().map_err(fail)?;
    let checks = classify::check_equivalence_theorems(&s).map_err(fail)?;
    let bounds = classify::verify_bounds(&s).map_err(fail)?;
    let (chain, chain_broken, c_bar) = if s.is_numerical() && s.embedding_dimension() >= 2 {
        let r = classify::classify(&s).map_err(fail)?;
        let c_bar = match classify::free_some_arrangement(&s).map_err(fail)? {
            Some(a) => {
                let k = constants::arrangement_constants(&s, &a).map_err(fail)?;
                Some(k.c[k.rays..] == k.c_bar[k.rays..])
            }
            None => None,
        };
        (r.chain_levels(), r.chain_violations(), c_bar)
    } else {
        (None, Vec::new(), None)
    };
    Ok(Outcome { label, checks, bounds, chain, chain_broken, c_bar })
}

/// Runs every theorem check and bound over the corpus. The report does not
/// depend on the execution strategy.
pub fn run_theorem_harness(corpus: &Corpus, exec: Exec) -> HarnessReport {
    let outcomes = exec.map(&corpus.entries, evaluate);
    let mut r = HarnessReport { semigroups: corpus.len(), ..Default::default() };
    let mut members = [0usize; 7];
    let mut witness: [Option<String>; 6] = Default::default();
    for o in outcomes {
        let o = match o {
            Ok(o) => o,
            Err((label, msg)) => {
                r.violations.push(Violation {
                    semigroup: label,
                    theorem: "error".into(),
                    scope: None,
                    conditions: Vec::new(),
                    detail: Some(msg),
                });
                continue;
            }
        };
        for c in &o.checks {
            r.theorem_checks += 1;
            let t = r.theorems.entry(c.id.to_string()).or_default();
            t.checked += 1;
            if c.all_hold() {
                t.all_true += 1;
            } else if c.kind != CheckKind::Identity && !c.conditions[0].holds && (c.kind == CheckKind::Implication || c.consistent) {
                t.all_false += 1;
            }
            if !c.consistent {
                t.violated += 1;
                r.violations.push(Violation {
                    semigroup: o.label.clone(),
                    theorem: c.id.to_string(),
                    scope: c.scope.clone(),
                    conditions: c.conditions.clone(),
                    detail: c.detail.clone(),
                });
            }
        }
        for b in &o.bounds {
            r.bound_checks += 1;
            let t = r.bounds.entry(b.id.to_string()).or_default();
            match b.status {
                BoundStatus::Pass => t.passed += 1,
                BoundStatus::Fail => t.failed += 1,
                BoundStatus::Skipped => t.skipped += 1,
            }
            t.tight += usize::from(b.tight);
            if b.status == BoundStatus::Fail {
                r.violations.push(Violation {
                    semigroup: o.label.clone(),
                    theorem: b.id.to_string(),
                    scope: None,
                    conditions: vec![Condition { name: format!("{} with {} vs {}", b.relation, b.lhs, b.rhs), holds: false }],
                    detail: None,
                });
            }
        }
        for (a, b) in &o.chain_broken {
            r.violations.push(Violation {
                semigroup: o.label.clone(),
                theorem: "family_chain".into(),
                scope: None,
                conditions: vec![Condition { name: format!("{a} implies {b}"), holds: false }],
                detail: None,
            });
        }
        if let Some(levels) = o.chain {
            for (k, &l) in levels.iter().enumerate() {
                members[k] += usize::from(l);
            }
            for k in 0..6 {
                if levels[k + 1] && !levels[k] && witness[k].is_none() {
                    witness[k] = Some(o.label.clone());
                }
            }
        }
        if let Some(eq) = o.c_bar {
            r.c_bar.free += 1;
            r.c_bar.c_equals_c_bar += usize::from(eq);
        }
    }
    r.chain_members = classify::CHAIN.iter().zip(members).map(|(n, k)| (n.to_string(), k)).collect();
    r.strictness =
        (0..6).map(|k| Strictness { smaller: classify::CHAIN[k], larger: classify::CHAIN[k + 1], witness: witness[k].take() }).collect();
    r
}

/// Gluings that separate adjacent families of the chain. None of them has
/// genus below 22, so small enumerated corpora miss these separations.
pub fn chain_witness_gluings() -> Result<Corpus> {
    let specs: [(&[u64], &[u64], u64, u64); 4] =
        [(&[3, 4], &[1], 5, 6), (&[3, 4], &[2, 3], 4, 9), (&[2, 3], &[2, 3], 5, 8), (&[2, 3], &[2, 3], 5, 7)];
    let mut c = Corpus::new();
    for (l, r, a1, a2) in specs {
        let spec = GluingSpec { left: Semigroup::numerical(l)?, right: Semigroup::numerical(r)?, a1, a2 };
        let how = format!("{a1}<{}> + {a2}<{}>", format_generators(spec.left.gens()), format_generators(spec.right.gens()));
        let g = construct::glue_numerical(&spec)?;
        c.push(g.semigroup.gens().to_vec(), Provenance::Constructed { how })?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_genus_corpora() {
        let c = enumerate_numerical_by_genus(0, Exec::Sequential).unwrap();
        assert_eq!(c.len(), 1);
        let c = enumerate_numerical_by_genus(2, Exec::Sequential).unwrap();
        let labels: Vec<String> = c.entries.iter().map(CorpusEntry::label).collect();
        assert_eq!(labels, ["<1>", "<2,3>", "<2,5>", "<3,4,5>"]);
        assert_eq!(count_by_genus(7, Exec::Parallel).unwrap(), vec![1, 1, 2, 4, 7, 12, 23, 39]);
        assert!(enumerate_numerical_by_genus(26, Exec::Sequential).is_err());
    }

    #[test]
    fn corpus_text() {
        let c = Corpus::from_text("# sample\n2,3\n3,2 # same\n4,6,9,12\n\n", "x.txt").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.entries[1].label(), "<4,6,9>");
        assert!(Corpus::from_text("2,x", "bad").is_err());
    }

    #[test]
    fn divisible_search() {
        let h = min_frobenius_betti_divisible(4, 600, 2, Exec::Parallel).unwrap();
        assert_eq!((h.frobenius, h.generators), (523, vec![30, 42, 105, 140]));
        let h = min_frobenius_betti_divisible(4, 600, 1, Exec::Parallel).unwrap();
        assert_eq!((h.frobenius, h.generators), (383, vec![30, 42, 70, 105]));
        let h = min_frobenius_betti_divisible(2, 10, 1, Exec::Sequential).unwrap();
        assert_eq!((h.frobenius, h.generators), (1, vec![2, 3]));
        assert_eq!(min_frobenius_betti_divisible(4, 500, 2, Exec::Sequential), Err(Error::EmptySearch));
        for h in betti_divisible_up_to(3, 120, Exec::Sequential).unwrap() {
            let s = Semigroup::numerical(&h.generators).unwrap();
            assert_eq!(s.frobenius().unwrap(), h.frobenius, "{h:?}");
        }
    }

    #[test]
    fn harness_on_tiny_corpora() {
        let r = run_theorem_harness(&Corpus::new(), Exec::Sequential);
        assert_eq!((r.semigroups, r.violation_count()), (0, 0));
        let mut c = Corpus::new();
        c.push(
            vec![NatVec::scalar(24), NatVec::scalar(26), NatVec::scalar(36), NatVec::scalar(39)],
            Provenance::Constructed { how: "example".into() },
        )
        .unwrap();
        let r = run_theorem_harness(&c, Exec::Sequential);
        assert_eq!(r.violation_count(), 0, "{:?}", r.violations);
        assert_eq!(r.theorems["ci_single_minimal_iff_isolated_count"].all_false, 1);
    }

    #[test]
    fn witness_gluings() {
        let c = chain_witness_gluings().unwrap();
        let labels: Vec<String> = c.entries.iter().map(CorpusEntry::label).collect();
        assert_eq!(labels, ["<15,20,6>", "<12,16,18,27>", "<10,15,16,24>", "<10,15,14,21>"]);
        let r = run_theorem_harness(&c, Exec::Sequential);
        assert_eq!(r.violation_count(), 0, "{:?}", r.violations);
        let seen = r.strictness.iter().filter(|s| s.witness.is_some()).count();
        assert_eq!(seen, 4);
    }
}
