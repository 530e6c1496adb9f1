//! Betti elements, minimal presentations and the complete intersection test.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::constants::{self, Arrangement};
use crate::error::{Error, Result};
use crate::factor::{self, Fiber, UnionFind};
use crate::natvec::{Element, Factorization, NatVec};
use crate::par::Exec;
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiMethod {
    /// Numerical: `w + n_i` for non-zero `w` in `Ap(S; n_1)`.
    AperyCandidates,
    /// Affine with a free arrangement: `c_star_i n_i` past the rays.
    FreeArrangement,
    /// All elements up to a total degree bound; may miss larger elements.
    BoundedSweep,
}

/// Betti elements with their fibers, sorted by element.
#[derive(Debug, Clone, Serialize)]
pub struct BettiProfile {
    pub elements: Vec<Fiber>,
    pub complete: bool,
    pub method: BettiMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
}

impl BettiProfile {
    pub fn values(&self) -> Vec<NatVec> {
        self.elements.iter().map(|f| f.element().clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, b: &NatVec) -> Option<&Fiber> {
        self.elements.binary_search_by(|f| f.element().cmp(b)).ok().map(|i| &self.elements[i])
    }

    /// Sum of `nc(b)` over the Betti elements.
    pub fn nc_sum(&self) -> usize {
        self.elements.iter().map(Fiber::nc).sum()
    }

    /// Betti elements having an isolated factorization.
    pub fn ibetti(&self) -> Vec<&Fiber> {
        self.elements.iter().filter(|f| f.classes.iter().any(|c| c.len() == 1)).collect()
    }

    pub fn require_complete(&self) -> Result<&Self> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::IncompleteBetti { bound: self.degree_bound.unwrap_or(0) })
        }
    }
}

/// Betti profile with the default strategy, cached on the semigroup.
///
/// Non-simplicial affine semigroups without a free arrangement need an
/// explicit bound; see [`betti_profile_bounded`].
pub fn betti_profile(s: &Semigroup) -> Result<Arc<BettiProfile>> {
    betti_profile_bounded(s, None)
}

/// As [`betti_profile`], falling back to a sweep up to `degree_bound` when
/// no exact method applies. Exact results are cached.
pub fn betti_profile_bounded(s: &Semigroup, degree_bound: Option<u64>) -> Result<Arc<BettiProfile>> {
    if let Some(p) = s.cache.betti.get() {
        return Ok(p.clone());
    }
    let p = if s.is_numerical() {
        Some(numerical_profile(s)?)
    } else if s.is_simplicial() {
        free_profile(s)?
    } else {
        None
    };
    if let Some(p) = p {
        return Ok(s.cache.betti.get_or_init(|| Arc::new(p)).clone());
    }
    let bound = match degree_bound {
        Some(b) => b,
        None if s.is_simplicial() => default_degree_bound(s)?,
        None => return Err(Error::DegreeBoundRequired("non-simplicial semigroup without a free arrangement".into())),
    };
    Ok(Arc::new(bounded_sweep(s, bound)?))
}

pub fn betti_elements(s: &Semigroup) -> Result<Vec<NatVec>> {
    Ok(betti_profile(s)?.values())
}

/// `w + n_i` for `w` in `Ap(S; n_1)`, `w != 0`; sorted and deduplicated.
pub fn numerical_candidates(s: &Semigroup) -> Result<Vec<u64>> {
    s.require_numerical()?;
    let g = s.scalar_gens();
    let ap = s.apery_numerical(g[0]);
    let mut out = BTreeSet::new();
    for &w in ap.iter().filter(|&&w| w > 0) {
        for &n in &g {
            out.insert(w.checked_add(n).ok_or(Error::Overflow)?);
        }
    }
    Ok(out.into_iter().collect())
}

const PARALLEL_CANDIDATES: usize = 256;

fn numerical_profile(s: &Semigroup) -> Result<BettiProfile> {
    let exec = if numerical_candidates(s)?.len() >= PARALLEL_CANDIDATES { Exec::Parallel } else { Exec::Sequential };
    numerical_profile_with(s, exec)
}

/// Numerical Betti profile with an explicit execution strategy.
pub fn numerical_profile_with(s: &Semigroup, exec: Exec) -> Result<BettiProfile> {
    let cands = numerical_candidates(s)?;
    let fibers = exec.try_map(&cands, |&c| factor::fiber(s, &NatVec::scalar(c)))?;
    Ok(BettiProfile {
        elements: fibers.into_iter().filter(Fiber::is_betti).collect(),
        complete: true,
        method: BettiMethod::AperyCandidates,
        degree_bound: None,
    })
}

fn free_profile(s: &Semigroup) -> Result<Option<BettiProfile>> {
    let Some(arr) = constants::find_free_arrangement(s)? else { return Ok(None) };
    let mut elems = BTreeSet::new();
    for pos in arr.rays()..s.embedding_dimension() {
        let c = constants::c_star(s, &arr, pos)?;
        elems.insert(s.gen(arr.order()[pos]).scale(c)?);
    }
    let mut fibers = Vec::with_capacity(elems.len());
    for b in elems {
        let f = factor::fiber(s, &b)?;
        if !f.is_betti() {
            return Err(Error::Invariant(format!("free arrangement predicted Betti element {b} with one R-class")));
        }
        fibers.push(f);
    }
    Ok(Some(BettiProfile { elements: fibers, complete: true, method: BettiMethod::FreeArrangement, degree_bound: None }))
}

/// Twice the total degree of the `c_star_i n_i` of the stored arrangement.
pub fn default_degree_bound(s: &Semigroup) -> Result<u64> {
    let arr = Arrangement::stored(s)?;
    let mut total = 0u64;
    for pos in arr.rays()..s.embedding_dimension() {
        let c = constants::c_star(s, &arr, pos)?;
        total = total.checked_add(s.gen(arr.order()[pos]).scale(c)?.total_degree()).ok_or(Error::Overflow)?;
    }
    total.checked_mul(2).ok_or(Error::Overflow)
}

/// Every element of total degree at most `bound` with two or more R-classes.
pub fn bounded_sweep(s: &Semigroup, bound: u64) -> Result<BettiProfile> {
    let mut fibers = Vec::new();
    for m in s.elements_up_to_degree(bound)? {
        if m.is_zero() {
            continue;
        }
        let f = factor::fiber(s, &m)?;
        if f.is_betti() {
            fibers.push(f);
        }
    }
    Ok(BettiProfile { elements: fibers, complete: false, method: BettiMethod::BoundedSweep, degree_bound: Some(bound) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub element: Element,
    pub left: Factorization,
    pub right: Factorization,
}

/// For each Betti element, a star over its R-classes rooted at the class of
/// the lexicographically smallest factorization, joining lexicographically
/// smallest representatives.
pub fn minimal_presentation(s: &Semigroup) -> Result<Vec<Relation>> {
    let p = betti_profile(s)?;
    p.require_complete()?;
    Ok(presentation_from(&p))
}

pub(crate) fn presentation_from(p: &BettiProfile) -> Vec<Relation> {
    let mut out = Vec::new();
    for f in &p.elements {
        let root = &f.factorizations[f.classes[0][0]];
        for class in &f.classes[1..] {
            out.push(Relation { element: f.element.clone(), left: root.clone(), right: f.factorizations[class[0]].clone() });
        }
    }
    out
}

/// Cardinality of a minimal presentation equals `e - dim(S)`.
pub fn is_complete_intersection(s: &Semigroup) -> Result<bool> {
    let p = betti_profile(s)?;
    p.require_complete()?;
    Ok(p.elements.iter().map(|f| f.nc() - 1).sum::<usize>() == s.codim())
}

/// Whether `relations` connect every fiber of elements with total degree at
/// most `bound` under the moves `x -> x - u + v`.
pub fn presentation_generates(s: &Semigroup, relations: &[(Factorization, Factorization)], bound: u64) -> Result<bool> {
    for m in s.elements_up_to_degree(bound)? {
        let z = factor::factorizations(s, &m)?;
        if z.len() < 2 {
            continue;
        }
        let index: HashMap<&Factorization, usize> = z.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut uf = UnionFind::new(z.len());
        let mut parts = z.len();
        for (i, x) in z.iter().enumerate() {
            for (u, v) in relations {
                for (a, b) in [(u, v), (v, u)] {
                    if let Some(rest) = x.checked_sub(a) {
                        let y = rest.add(b)?;
                        if let Some(&j) = index.get(&y) {
                            if uf.union(i, j) {
                                parts -= 1;
                            }
                        }
                    }
                }
            }
        }
        if parts != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Betti elements grouped with their class counts, for reports.
pub fn nc_by_element(p: &BettiProfile) -> BTreeMap<NatVec, usize> {
    p.elements.iter().map(|f| (f.element().clone(), f.nc())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(v: &[NatVec]) -> Vec<u64> {
        v.iter().map(|x| x[0]).collect()
    }

    #[test]
    fn numerical_betti() {
        let s = Semigroup::numerical(&[24, 26, 36, 39]).unwrap();
        assert_eq!(scalars(&betti_elements(&s).unwrap()), vec![72, 78, 156]);
        let s = Semigroup::numerical(&[30, 42, 105, 140]).unwrap();
        assert_eq!(scalars(&betti_elements(&s).unwrap()), vec![210, 420]);
        let s = Semigroup::numerical(&[1]).unwrap();
        assert!(betti_elements(&s).unwrap().is_empty());
    }

    #[test]
    fn affine_betti() {
        let s = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
        let p = betti_profile(&s).unwrap();
        assert!(p.complete);
        assert_eq!(p.values(), vec![NatVec::new(vec![0, 6])]);
        let m = Semigroup::parse("(1,0,1);(0,1,0);(1,1,0);(0,0,1)").unwrap();
        assert!(matches!(betti_profile(&m), Err(Error::DegreeBoundRequired(_))));
        let p = betti_profile_bounded(&m, Some(6)).unwrap();
        assert!(!p.complete);
        assert_eq!(p.values(), vec![NatVec::new(vec![1, 1, 1])]);
        assert!(is_complete_intersection(&m).is_err());
    }

    #[test]
    fn presentations() {
        let size = |g: &[u64]| minimal_presentation(&Semigroup::numerical(g).unwrap()).unwrap().len();
        assert_eq!(size(&[24, 36, 26, 39]), 3);
        assert_eq!(size(&[2, 3]), 1);
        assert_eq!(size(&[3, 4, 5]), 3);
        let ci = |g: &[u64]| is_complete_intersection(&Semigroup::numerical(g).unwrap()).unwrap();
        assert!(ci(&[24, 26, 36, 39]));
        assert!(!ci(&[3, 4, 5]));
        assert!(ci(&[2, 3]));
    }

    #[test]
    fn presentation_spans_fibers() {
        let s = Semigroup::numerical(&[5, 7, 11]).unwrap();
        let rels: Vec<_> = minimal_presentation(&s).unwrap().into_iter().map(|r| (r.left, r.right)).collect();
        assert!(presentation_generates(&s, &rels, 80).unwrap());
        assert!(!presentation_generates(&s, &rels[1..], 80).unwrap());
    }
}
