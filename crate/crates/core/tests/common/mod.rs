//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Vector = Vec<u64>;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn gcd_all(v: &[u64]) -> u64 {
    v.iter().fold(0, |a, &b| gcd(a, b))
}

/// Membership in the monoid generated by `gens` for every `x <= upto`.
pub fn members(gens: &[u64], upto: u64) -> Vec<bool> {
    let mut m = vec![false; upto as usize + 1];
    m[0] = true;
    for x in 1..=upto as usize {
        m[x] = gens.iter().any(|&g| g as usize <= x && m[x - g as usize]);
    }
    m
}

pub fn frobenius(gens: &[u64]) -> i64 {
    let lim = gens.iter().max().unwrap().pow(2) + 1;
    let m = members(gens, lim);
    (0..=lim).rev().find(|&x| !m[x as usize]).map_or(-1, |x| x as i64)
}

/// Drops generators that are sums of the others.
pub fn minimal(gens: &[u64]) -> Vec<u64> {
    let mut g: Vec<u64> = gens.to_vec();
    g.sort_unstable();
    g.dedup();
    let top = *g.last().unwrap();
    let mut out: Vec<u64> = Vec::new();
    for &x in &g {
        let m = members(&out, top);
        if !m[x as usize] {
            out.push(x);
        }
    }
    out
}

/// Every `x` with `sum x_i g_i = target`, lexicographically sorted.
pub fn factorizations(gens: &[u64], target: u64) -> Vec<Vector> {
    fn go(gens: &[u64], i: usize, rest: u64, cur: &mut Vector, out: &mut Vec<Vector>) {
        if i == gens.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = 0;
        while k * gens[i] <= rest {
            cur.push(k);
            go(gens, i + 1, rest - k * gens[i], cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(gens, 0, target, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// R-classes by label propagation over the "share a generator" graph,
/// O(n^2) per pass. Classes and members are sorted.
pub fn r_classes(facts: &[Vector]) -> Vec<Vec<Vector>> {
    let n = facts.len();
    let meets = |a: &Vector, b: &Vector| a.iter().zip(b).any(|(x, y)| *x > 0 && *y > 0);
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if label[j] < label[i] && meets(&facts[i], &facts[j]) {
                    label[i] = label[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vector>> = BTreeMap::new();
    for (i, f) in facts.iter().enumerate() {
        groups.entry(label[i]).or_default().push(f.clone());
    }
    let mut out: Vec<Vec<Vector>> = groups
        .into_values()
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    out.sort();
    out
}

/// Betti elements found by checking every element up to `bound`.
pub fn betti_sweep(gens: &[u64], bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&m| r_classes(&factorizations(gens, m)).len() >= 2).collect()
}

/// `F + n_1 + max n` bounds the Betti elements.
pub fn betti_numerical(gens: &[u64]) -> Vec<u64> {
    let f = frobenius(gens).max(0) as u64;
    betti_sweep(gens, f + gens[0] + gens.iter().max().unwrap() + 1)
}

/// Elements with exactly one factorization, up to `bound`.
pub fn unique_factorizations(gens: &[u64], bound: u64) -> Vec<Vector> {
    let mut out: Vec<Vector> = (0..=bound)
        .filter_map(|m| {
            let f = factorizations(gens, m);
            (f.len() == 1).then(|| f[0].clone())
        })
        .collect();
    out.sort();
    out
}

/// Number of numerical semigroups of each genus `0..=g_max`, from gap sets:
/// size `g` subsets of `[1, 2g - 1]` whose complement is additively closed.
pub fn genus_counts(g_max: usize) -> Vec<usize> {
    let mut out = vec![1];
    for g in 1..=g_max {
        let top = 2 * g - 1;
        let mut count = 0;
        for mask in 0u64..1 << top {
            if mask.count_ones() as usize != g || mask & 1 == 0 {
                continue;
            }
            let gap = |x: usize| x >= 1 && x <= top && mask >> (x - 1) & 1 == 1;
            let closed = (1..=top).all(|x| gap(x) || (1..=top - x).all(|y| gap(y) || !gap(x + y)));
            if closed {
                count += 1;
            }
        }
        out.push(count);
    }
    out
}

/// Factorizations of every element of `<gens>` reachable with total
/// degree at most `degree`, grouped by element.
pub fn affine_fibers(gens: &[Vector], degree: u64) -> BTreeMap<Vector, Vec<Vector>> {
    let e = gens.len();
    let deg: Vec<u64> = gens.iter().map(|g| g.iter().sum()).collect();
    let mut out: BTreeMap<Vector, Vec<Vector>> = BTreeMap::new();
    fn go(i: usize, left: u64, cur: &mut Vector, deg: &[u64], all: &mut Vec<Vector>) {
        if i == deg.len() {
            all.push(cur.clone());
            return;
        }
        let mut k = 0;
        while k * deg[i] <= left {
            cur.push(k);
            go(i + 1, left - k * deg[i], cur, deg, all);
            cur.pop();
            k += 1;
        }
    }
    let mut all = Vec::new();
    go(0, degree, &mut Vec::new(), &deg, &mut all);
    for x in all {
        let mut v = vec![0u64; gens[0].len()];
        for i in 0..e {
            for (c, g) in v.iter_mut().zip(&gens[i]) {
                *c += x[i] * g;
            }
        }
        out.entry(v).or_default().push(x);
    }
    for f in out.values_mut() {
        f.sort();
    }
    out
}

/// Betti elements of total degree at most `degree`.
pub fn affine_betti(gens: &[Vector], degree: u64) -> BTreeSet<Vector> {
    affine_fibers(gens, degree)
        .into_iter()
        .filter(|(v, f)| v.iter().sum::<u64>() <= degree && r_classes(f).len() >= 2)
        .map(|(v, _)| v)
        .collect()
}

/// Isolated factorizations at the Betti elements of total degree at most
/// `degree`.
pub fn affine_ib(gens: &[Vector], degree: u64) -> BTreeSet<Vector> {
    let mut out = BTreeSet::new();
    for (v, f) in affine_fibers(gens, degree) {
        if v.iter().sum::<u64>() > degree {
            continue;
        }
        let classes = r_classes(&f);
        if classes.len() >= 2 {
            out.extend(classes.into_iter().filter(|c| c.len() == 1).map(|mut c| c.remove(0)));
        }
    }
    out
}

/// Numerical semigroups with `k` generators below `limit` (minimal, coprime)
/// and Frobenius number at most `f_max`.
pub fn small_semigroups(k: usize, limit: u64, f_max: i64) -> Vec<Vec<u64>> {
    fn go(k: usize, start: u64, limit: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..limit {
            cur.push(x);
            go(k, x + 1, limit, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(k, 2, limit, &mut Vec::new(), &mut all);
    all.into_iter().filter(|g| gcd_all(g) == 1 && minimal(g).len() == k && frobenius(g) <= f_max).collect()
}
