//! Isolated factorizations and the sets built from them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::betti::{self, BettiProfile};
use crate::constants;
use crate::error::{Error, Result};
use crate::factor::{self, Fiber};
use crate::natvec::{Element, Factorization, NatVec};
use crate::semigroup::Semigroup;

/// Factorizations forming a singleton R-class of `Z(m)`.
pub fn isolated_factorizations(s: &Semigroup, m: &NatVec) -> Result<Vec<Factorization>> {
    Ok(factor::fiber(s, m)?.isolated())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationSet {
    pub factorizations: Vec<Factorization>,
    /// `false` when produced by a bounded sweep.
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
}

impl FactorizationSet {
    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }
}

/// Isolated factorizations of Betti elements.
pub fn ib_set(s: &Semigroup) -> Result<FactorizationSet> {
    Ok(ib_from(&*betti::betti_profile(s)?))
}

pub fn ib_from(p: &BettiProfile) -> FactorizationSet {
    let set: BTreeSet<Factorization> = p.elements.iter().flat_map(Fiber::isolated).collect();
    FactorizationSet { factorizations: set.into_iter().collect(), complete: p.complete, degree_bound: p.degree_bound }
}

/// Factorizations of the elements with a unique factorization.
///
/// Numerical only: these elements all lie in `Ap(S; b)` for the least Betti
/// element `b`, so the set is finite. `N` itself is rejected.
pub fn is_set(s: &Semigroup) -> Result<FactorizationSet> {
    s.require_numerical()?;
    let p = betti::betti_profile(s)?;
    let Some(b1) = p.elements.first().map(|f| f.element()[0]) else {
        return Err(Error::Infinite("every element of N has a unique factorization".into()));
    };
    let ap = s.apery_numerical(b1);
    let top = *ap.iter().max().unwrap();
    let table = factor::denumerant_table(&s.scalar_gens(), top);
    let mut out = Vec::new();
    for &w in &ap {
        if table[w as usize] == 1 {
            out.extend(factor::factorizations(s, &NatVec::scalar(w))?);
        }
    }
    out.sort();
    Ok(FactorizationSet { factorizations: out, complete: true, degree_bound: None })
}

/// Unique factorizations of elements up to a total degree bound.
pub fn is_set_bounded(s: &Semigroup, degree_bound: u64) -> Result<FactorizationSet> {
    let mut out = Vec::new();
    for m in s.elements_up_to_degree(degree_bound)? {
        let z = factor::factorizations_capped(s, &m, 2);
        if let Ok(z) = z {
            if z.len() == 1 {
                out.extend(z);
            }
        }
    }
    out.sort();
    Ok(FactorizationSet { factorizations: out, complete: false, degree_bound: Some(degree_bound) })
}

/// Betti elements that are minimal with respect to `<=_S`.
pub fn betti_minimals(s: &Semigroup) -> Result<Vec<NatVec>> {
    let p = betti::betti_profile(s)?;
    p.require_complete()?;
    Ok(betti_minimals_of(s, &p))
}

pub fn betti_minimals_of(s: &Semigroup, p: &BettiProfile) -> Vec<NatVec> {
    let v = p.values();
    v.iter().filter(|b| !v.iter().any(|a| a != *b && s.le_s(a, b))).cloned().collect()
}

/// `<=_S`-minimal elements of a set of elements.
pub fn s_minimals(s: &Semigroup, v: &[NatVec]) -> Vec<NatVec> {
    v.iter().filter(|b| !v.iter().any(|a| a != *b && s.le_s(a, b))).cloned().collect()
}

/// Elements `b` with `d(b) >= 2` and `d(b - n_i) = 1` whenever `n_i <=_S b`.
///
/// Computed without Betti elements: numerical semigroups search every
/// integer up to `max n_i + max Ap(S; n_1)` using a denumerant table.
pub fn minimal_multi_elements(s: &Semigroup) -> Result<Vec<NatVec>> {
    s.require_numerical()?;
    let g = s.scalar_gens();
    let top = g.iter().max().unwrap() + s.apery_numerical(g[0]).into_iter().max().unwrap();
    let d = factor::denumerant_table(&g, top);
    let out = (1..=top)
        .filter(|&b| d[b as usize] >= 2 && g.iter().all(|&n| b < n || d[(b - n) as usize] == 0 || d[(b - n) as usize] == 1))
        .map(NatVec::scalar)
        .collect();
    Ok(out)
}

/// Minimal multi-elements among the elements up to a total degree bound.
pub fn minimal_multi_elements_bounded(s: &Semigroup, degree_bound: u64) -> Result<Vec<NatVec>> {
    let mut out = Vec::new();
    for m in s.elements_up_to_degree(degree_bound)? {
        if factor::denumerant_at_most(s, &m, 1)? < 2 {
            continue;
        }
        let mut ok = true;
        for g in s.gens() {
            if let Some(r) = m.checked_sub(g) {
                if s.contains(&r) && factor::denumerant_at_most(s, &r, 1)? != 1 {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(m);
        }
    }
    Ok(out)
}

/// `a -> c_a` for the atoms having a multiple in the monoid of the others.
pub fn c_atoms(s: &Semigroup) -> Result<BTreeMap<usize, u64>> {
    Ok(constants::c_plain_all(s)?.into_iter().enumerate().filter_map(|(i, c)| c.map(|c| (i, c))).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct IsolatedAtBetti {
    pub element: Element,
    pub nc: usize,
    pub isolated: Vec<Factorization>,
}

/// Everything about isolated factorizations of one semigroup.
#[derive(Debug, Clone, Serialize)]
pub struct IsolatedProfile {
    pub betti: Vec<IsolatedAtBetti>,
    pub ibetti: Vec<Element>,
    pub betti_minimals: Vec<Element>,
    pub ib: FactorizationSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is: Option<FactorizationSet>,
    pub i_b: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_s: Option<usize>,
    /// `i_s + i_b` when both are exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    /// Zero-based generator index to `c`.
    pub c_atoms: BTreeMap<usize, u64>,
}

pub fn isolated_profile(s: &Semigroup, p: &BettiProfile) -> Result<IsolatedProfile> {
    let ib = ib_from(p);
    let is = if s.is_numerical() && !p.is_empty() { Some(is_set(s)?) } else { None };
    let i_b = ib.len();
    let i_s = is.as_ref().map(FactorizationSet::len);
    Ok(IsolatedProfile {
        betti: p.elements.iter().map(|f| IsolatedAtBetti { element: f.element.clone(), nc: f.nc(), isolated: f.isolated() }).collect(),
        ibetti: p.ibetti().into_iter().map(|f| f.element.clone()).collect(),
        betti_minimals: betti_minimals_of(s, p).into_iter().map(Element).collect(),
        i: i_s.filter(|_| ib.complete).map(|x| x + i_b),
        ib,
        is,
        i_b,
        i_s,
        c_atoms: c_atoms(s)?,
    })
}
