//! Factorization fibers `Z(m)`, their R-classes and denumerants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::natvec::{Element, Factorization, NatVec};
use crate::semigroup::Semigroup;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Connected components of the graph joining factorizations with
/// intersecting supports. Classes are lists of indices into `facts`; each
/// class is sorted and classes are ordered by their first index.
pub fn r_classes(facts: &[Factorization]) -> Vec<Vec<usize>> {
    let n = facts.len();
    let width = facts.first().map_or(0, NatVec::len);
    let mut uf = UnionFind::new(n);
    for g in 0..width {
        let mut rep = None;
        for (i, x) in facts.iter().enumerate() {
            if x[g] > 0 {
                match rep {
                    None => rep = Some(i),
                    Some(r) => {
                        uf.union(r, i);
                    }
                }
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = uf.find(i);
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(i);
    }
    classes
}

/// `Z(m)` sorted lexicographically together with its R-classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub element: Element,
    pub factorizations: Vec<Factorization>,
    /// Indices into `factorizations`; ordered by lexicographically smallest member.
    pub classes: Vec<Vec<usize>>,
}

impl Fiber {
    pub fn from_factorizations(element: NatVec, mut factorizations: Vec<Factorization>) -> Self {
        factorizations.sort();
        let classes = r_classes(&factorizations);
        Fiber { element: Element(element), factorizations, classes }
    }

    pub fn element(&self) -> &NatVec {
        &self.element.0
    }

    pub fn denumerant(&self) -> usize {
        self.factorizations.len()
    }

    pub fn nc(&self) -> usize {
        self.classes.len()
    }

    pub fn is_betti(&self) -> bool {
        self.classes.len() >= 2
    }

    /// Factorizations whose R-class is a singleton, sorted.
    pub fn isolated(&self) -> Vec<Factorization> {
        self.classes.iter().filter(|c| c.len() == 1).map(|c| self.factorizations[c[0]].clone()).collect()
    }

    pub fn class_members(&self, k: usize) -> impl Iterator<Item = &Factorization> {
        self.classes[k].iter().map(|&i| &self.factorizations[i])
    }

    /// Index of the class containing `x`, if `x` is in the fiber.
    pub fn class_of(&self, x: &Factorization) -> Option<usize> {
        let i = self.factorizations.binary_search(x).ok()?;
        self.classes.iter().position(|c| c.contains(&i))
    }
}

/// Exponent vectors `x` with `sum x_i n_i = m`, sorted lexicographically.
/// Fails with `FiberTooLarge` once more than `limit` are found.
pub fn factorizations_capped(s: &Semigroup, m: &NatVec, limit: usize) -> Result<Vec<Factorization>> {
    if m.len() != s.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: s.ambient_dim(), got: m.len() });
    }
    let mut out = Vec::new();
    let mut x = vec![0u64; s.embedding_dimension()];
    let found = if s.ambient_dim() == 1 {
        let g = s.scalar_gens();
        let prefix = if s.embedding_dimension() > 1 { Some(s.prefix_monoids()) } else { None };
        dfs_scalar(&g, prefix, g.len() - 1, m[0], &mut x, &mut out, limit)
    } else {
        let supports = prefix_supports(s);
        dfs_vector(s.gens(), &supports, s.embedding_dimension() - 1, m.clone(), &mut x, &mut out, limit)
    };
    if !found {
        return Err(Error::FiberTooLarge { cap: limit });
    }
    out.sort();
    Ok(out)
}

pub fn factorizations(s: &Semigroup, m: &NatVec) -> Result<Vec<Factorization>> {
    factorizations_capped(s, m, s.fiber_cap())
}

pub fn fiber(s: &Semigroup, m: &NatVec) -> Result<Fiber> {
    Ok(Fiber::from_factorizations(m.clone(), factorizations(s, m)?))
}

pub fn denumerant(s: &Semigroup, m: &NatVec) -> Result<usize> {
    Ok(factorizations(s, m)?.len())
}

/// `min(d(m), cap)` without enumerating the whole fiber.
pub fn denumerant_at_most(s: &Semigroup, m: &NatVec, cap: usize) -> Result<usize> {
    match factorizations_capped(s, m, cap) {
        Ok(v) => Ok(v.len()),
        Err(Error::FiberTooLarge { .. }) => Ok(cap + 1),
        Err(e) => Err(e),
    }
}

pub fn nc(s: &Semigroup, m: &NatVec) -> Result<usize> {
    Ok(fiber(s, m)?.nc())
}

// Generators are visited from the last index down to the first.
fn dfs_scalar(
    g: &[u64],
    prefix: Option<&[crate::semigroup::Monoid1D]>,
    i: usize,
    residual: u64,
    x: &mut Vec<u64>,
    out: &mut Vec<Factorization>,
    limit: usize,
) -> bool {
    if i == 0 {
        if residual % g[0] == 0 {
            if out.len() >= limit {
                return false;
            }
            x[0] = residual / g[0];
            out.push(NatVec::new(x.clone()));
            x[0] = 0;
        }
        return true;
    }
    let below = &prefix.expect("prefix monoids for e > 1")[i - 1];
    for k in (0..=residual / g[i]).rev() {
        let rest = residual - k * g[i];
        if !below.contains(rest) {
            continue;
        }
        x[i] = k;
        if !dfs_scalar(g, prefix, i - 1, rest, x, out, limit) {
            return false;
        }
    }
    x[i] = 0;
    true
}

fn prefix_supports(s: &Semigroup) -> Vec<Vec<bool>> {
    let d = s.ambient_dim();
    let mut acc = vec![false; d];
    s.gens()
        .iter()
        .map(|g| {
            for c in 0..d {
                acc[c] |= g[c] > 0;
            }
            acc.clone()
        })
        .collect()
}

fn dfs_vector(
    gens: &[NatVec],
    supports: &[Vec<bool>],
    i: usize,
    residual: NatVec,
    x: &mut Vec<u64>,
    out: &mut Vec<Factorization>,
    limit: usize,
) -> bool {
    if i == 0 {
        if let Some(k) = exact_multiple(&residual, &gens[0]) {
            if out.len() >= limit {
                return false;
            }
            x[0] = k;
            out.push(NatVec::new(x.clone()));
            x[0] = 0;
        }
        return true;
    }
    let g = &gens[i];
    let kmax = g.coords().iter().zip(residual.coords()).filter(|(gc, _)| **gc > 0).map(|(gc, r)| r / gc).min().unwrap_or(0);
    for k in (0..=kmax).rev() {
        let rest = residual.checked_sub(&NatVec::new(g.coords().iter().map(|c| c * k).collect())).expect("k within bounds");
        if rest.coords().iter().zip(&supports[i - 1]).any(|(r, ok)| *r > 0 && !ok) {
            continue;
        }
        x[i] = k;
        if !dfs_vector(gens, supports, i - 1, rest, x, out, limit) {
            return false;
        }
    }
    x[i] = 0;
    true
}

fn exact_multiple(v: &NatVec, g: &NatVec) -> Option<u64> {
    if v.is_zero() {
        return Some(0);
    }
    v.multiple_of(g)
}

/// `d(s)` for every `s <= upto`, saturating at `u64::MAX`. This is the
/// classical coin-change recurrence and serves as an independent check of
/// fiber enumeration for numerical semigroups.
pub fn denumerant_table(gens: &[u64], upto: u64) -> Vec<u64> {
    let n = upto as usize + 1;
    let mut d = vec![0u64; n];
    d[0] = 1;
    for &g in gens {
        let g = g as usize;
        for s in g..n {
            d[s] = d[s].saturating_add(d[s - g]);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[&[u64]]) -> Vec<NatVec> {
        let mut out: Vec<NatVec> = v.iter().map(|x| NatVec::new(x.to_vec())).collect();
        out.sort();
        out
    }

    #[test]
    fn fibers_of_24_26_36_39() {
        let s = Semigroup::numerical(&[24, 26, 36, 39]).unwrap();
        let z = fiber(&s, &NatVec::scalar(156)).unwrap();
        assert_eq!(z.factorizations, f(&[&[0, 6, 0, 0], &[0, 0, 0, 4], &[0, 3, 0, 2], &[5, 0, 1, 0], &[2, 0, 3, 0]]));
        // two classes: supports {n2, n4} and {n1, n3}; none is a singleton
        assert_eq!(z.nc(), 2);
        assert!(z.isolated().is_empty());
        let z = fiber(&s, &NatVec::scalar(72)).unwrap();
        assert_eq!(z.factorizations, f(&[&[3, 0, 0, 0], &[0, 0, 2, 0]]));
        assert_eq!(z.nc(), 2);
        let z = fiber(&s, &NatVec::scalar(78)).unwrap();
        assert_eq!(z.factorizations, f(&[&[0, 3, 0, 0], &[0, 0, 0, 2]]));
    }

    #[test]
    fn small_fibers() {
        let s = Semigroup::numerical(&[3, 4, 5]).unwrap();
        assert_eq!(denumerant(&s, &NatVec::scalar(8)).unwrap(), 2);
        let s = Semigroup::numerical(&[2, 3]).unwrap();
        assert_eq!(denumerant(&s, &NatVec::scalar(1)).unwrap(), 0);
        assert_eq!(denumerant(&s, &NatVec::scalar(0)).unwrap(), 1);
    }

    #[test]
    fn fiber_cap_is_enforced() {
        let s = Semigroup::numerical(&[2, 3]).unwrap().with_fiber_cap(3);
        assert_eq!(fiber(&s, &NatVec::scalar(30)), Err(Error::FiberTooLarge { cap: 3 }));
        assert_eq!(denumerant_at_most(&s, &NatVec::scalar(30), 1).unwrap(), 2);
    }

    #[test]
    fn affine_fibers() {
        let s = Semigroup::parse("(1,0,1);(0,1,0);(1,1,0);(0,0,1)").unwrap();
        let z = fiber(&s, &NatVec::new(vec![1, 1, 1])).unwrap();
        assert_eq!(z.factorizations, f(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
        assert_eq!(z.nc(), 2);
        assert_eq!(z.isolated().len(), 2);
    }

    #[test]
    fn table_matches_enumeration() {
        let s = Semigroup::numerical(&[5, 7, 9]).unwrap();
        let t = denumerant_table(&[5, 7, 9], 80);
        for m in 0..=80 {
            assert_eq!(t[m as usize] as usize, denumerant(&s, &NatVec::scalar(m)).unwrap(), "m = {m}");
        }
    }
}
