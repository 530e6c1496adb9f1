//! Structural predicates, each with a witness next to the boolean.

mod bounds;
mod theorems;

pub use bounds::{verify_bounds, BoundCheck, BoundStatus};
pub use theorems::{check_equivalence_theorems, CheckKind, Condition, TheoremCheck};

use std::collections::HashSet;

use serde::Serialize;

use crate::betti::{self, BettiProfile};
use crate::constants::{self, Arrangement, ArrangementConstants};
use crate::error::{Error, Result};
use crate::factor;
use crate::isolated;
use crate::natvec::{Element, NatVec};
use crate::semigroup::Semigroup;

/// Coordinate box `{ sum lambda_k n_{g_k} : 0 <= lambda_k <= bounds_k }`
/// over the non-ray generators `g` of a ray set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApBox {
    pub rays: Vec<usize>,
    pub generators: Vec<usize>,
    pub bounds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Arrangement {
        order: Vec<usize>,
    },
    Constants(ArrangementConstants),
    Box(ApBox),
    Element {
        element: Element,
    },
    /// Two elements that are not comparable.
    Pair {
        left: Element,
        right: Element,
    },
    /// Elements listed along the total order.
    Chain {
        elements: Vec<Element>,
    },
}

/// A predicate value; `holds` is `None` when it could not be decided.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Flag {
    pub fn new(holds: bool, witness: Option<Witness>) -> Self {
        Flag { holds: Some(holds), witness, note: None }
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        Flag { holds: None, witness: None, note: Some(note.into()) }
    }

    pub fn is_true(&self) -> bool {
        self.holds == Some(true)
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn lift(r: Result<Flag>) -> Flag {
    r.unwrap_or_else(|e| Flag::unknown(e.to_string()))
}

/// Generator indices outside a ray set, ascending.
pub fn non_rays(s: &Semigroup, rays: &[usize]) -> Vec<usize> {
    (0..s.embedding_dimension()).filter(|i| !rays.contains(i)).collect()
}

/// `c_bar_i = c_star_i` along the arrangement.
pub fn is_free(s: &Semigroup, arr: &Arrangement) -> Result<bool> {
    for pos in arr.rays()..arr.order().len() {
        if !constants::free_step(s, arr.mask_before(pos), arr.order()[pos])? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn free_some_arrangement(s: &Semigroup) -> Result<Option<Arrangement>> {
    constants::find_free_arrangement(s)
}

/// Every arrangement is free; the witness on failure is a non-free one.
pub fn is_free_all_arrangements(s: &Semigroup) -> Result<(bool, Option<Arrangement>)> {
    constants::free_for_all_arrangements(s)
}

/// A free arrangement among those starting with the given rays.
pub fn free_from_rays(s: &Semigroup, rays: &[usize]) -> Result<Option<Arrangement>> {
    let (found, arr) = constants::search_from(s, &[rays.to_vec()], false, |mask, i| constants::free_step(s, mask, i))?;
    Ok(if found { arr } else { None })
}

/// Whether `Ap(S; rays)` equals the box, compared as sets of elements.
pub fn apery_is_box(s: &Semigroup, b: &ApBox) -> Result<bool> {
    let ap = s.apery_rays(&b.rays)?;
    let size = b.bounds.iter().try_fold(1u128, |acc, &k| acc.checked_mul(k as u128 + 1));
    if size.is_some_and(|n| n < ap.len() as u128) {
        return Ok(false);
    }
    let members: HashSet<&NatVec> = ap.iter().collect();
    let gens: Vec<&NatVec> = b.generators.iter().map(|&i| s.gen(i)).collect();
    let mut seen: HashSet<NatVec> = HashSet::new();
    let mut lambda = vec![0u64; gens.len()];
    let mut cur = s.zero();
    let cap = s.fiber_cap();
    loop {
        if !members.contains(&cur) {
            return Ok(false);
        }
        seen.insert(cur.clone());
        if seen.len() > cap {
            return Err(Error::FiberTooLarge { cap });
        }
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                return Ok(seen.len() == ap.len());
            }
            if lambda[pos] < b.bounds[pos] {
                lambda[pos] += 1;
                cur = cur.add(gens[pos])?;
                break;
            }
            cur = cur.checked_sub(&gens[pos].scale(lambda[pos])?).ok_or_else(|| Error::Invariant("box walk".into()))?;
            lambda[pos] = 0;
            pos += 1;
        }
    }
}

/// Rectangular for the ray set: the box exponents `mu` if any.
pub fn rectangular_for(s: &Semigroup, rays: &[usize]) -> Result<Option<ApBox>> {
    let ap = s.apery_rays(rays)?;
    let top = s.apery_maximals(&ap);
    if top.len() != 1 {
        return Ok(None);
    }
    let generators = non_rays(s, rays);
    for x in factor::factorizations(s, &top[0])? {
        if rays.iter().any(|&j| x[j] > 0) {
            continue;
        }
        let b = ApBox { rays: rays.to_vec(), bounds: generators.iter().map(|&i| x[i]).collect(), generators: generators.clone() };
        if apery_is_box(s, &b)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// The box with bounds `c_i - 1`.
pub fn c_box(s: &Semigroup, rays: &[usize]) -> Result<Option<ApBox>> {
    let generators = non_rays(s, rays);
    let mut bounds = Vec::with_capacity(generators.len());
    for &i in &generators {
        match constants::c_plain(s, i)? {
            Some(c) => bounds.push(c - 1),
            None => return Ok(None),
        }
    }
    Ok(Some(ApBox { rays: rays.to_vec(), generators, bounds }))
}

/// The box with bounds `alpha_i`.
pub fn alpha_box(s: &Semigroup, rays: &[usize]) -> Result<ApBox> {
    let ap = s.apery_rays(rays)?;
    let set: HashSet<&NatVec> = ap.iter().collect();
    let generators = non_rays(s, rays);
    let bounds = generators.iter().map(|&i| constants::alpha_in(&set, s.gen(i))).collect::<Result<_>>()?;
    Ok(ApBox { rays: rays.to_vec(), generators, bounds })
}

pub fn is_c_rectangular(s: &Semigroup, rays: &[usize]) -> Result<(bool, Option<ApBox>)> {
    let Some(b) = c_box(s, rays)? else { return Ok((false, None)) };
    Ok((apery_is_box(s, &b)?, Some(b)))
}

pub fn is_alpha_rectangular(s: &Semigroup, rays: &[usize]) -> Result<(bool, ApBox)> {
    let b = alpha_box(s, rays)?;
    Ok((apery_is_box(s, &b)?, b))
}

/// Numerical: alpha-rectangular for every minimal generator.
pub fn is_alpha_rectangular_every_generator(s: &Semigroup) -> Result<(bool, Option<usize>)> {
    s.require_numerical()?;
    for i in 0..s.embedding_dimension() {
        if !is_alpha_rectangular(s, &[i])?.0 {
            return Ok((false, Some(i)));
        }
    }
    Ok((true, None))
}

fn chain_flag(v: &[NatVec], rel: impl Fn(&NatVec, &NatVec) -> bool) -> Flag {
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            if !rel(a, b) && !rel(b, a) {
                let pair = Witness::Pair { left: Element(a.clone()), right: Element(b.clone()) };
                return Flag::new(false, Some(pair));
            }
        }
    }
    let mut sorted = v.to_vec();
    sorted.sort_by_key(|x| (x.total_degree(), x.clone()));
    Flag::new(true, Some(Witness::Chain { elements: sorted.into_iter().map(Element).collect() }))
}

fn divides(a: &NatVec, b: &NatVec) -> bool {
    b.multiple_of(a).is_some()
}

pub fn is_betti_sorted(s: &Semigroup, p: &BettiProfile) -> Result<Flag> {
    p.require_complete()?;
    Ok(chain_flag(&p.values(), |a, b| s.le_s(a, b)))
}

pub fn is_betti_isolated_sorted(s: &Semigroup, p: &BettiProfile) -> Result<Flag> {
    p.require_complete()?;
    let v: Vec<NatVec> = p.ibetti().into_iter().map(|f| f.element().clone()).collect();
    Ok(chain_flag(&v, |a, b| s.le_s(a, b)))
}

pub fn is_betti_divisible(_s: &Semigroup, p: &BettiProfile) -> Result<Flag> {
    p.require_complete()?;
    Ok(chain_flag(&p.values(), divides))
}

pub fn is_betti_isolated_divisible(_s: &Semigroup, p: &BettiProfile) -> Result<Flag> {
    p.require_complete()?;
    let v: Vec<NatVec> = p.ibetti().into_iter().map(|f| f.element().clone()).collect();
    Ok(chain_flag(&v, divides))
}

pub fn has_single_betti(p: &BettiProfile) -> Result<Flag> {
    p.require_complete()?;
    let w = (p.len() == 1).then(|| Witness::Element { element: p.elements[0].element.clone() });
    Ok(Flag::new(p.len() == 1, w))
}

/// Exactly one Betti-minimal element, returned as the witness.
pub fn has_single_betti_minimal(s: &Semigroup, p: &BettiProfile) -> Result<Flag> {
    p.require_complete()?;
    let m = isolated::betti_minimals_of(s, p);
    let w = (m.len() == 1).then(|| Witness::Element { element: Element(m[0].clone()) });
    Ok(Flag::new(m.len() == 1, w))
}

#[derive(Debug, Clone, Serialize)]
pub struct RaySetFlags {
    pub rays: Vec<usize>,
    pub rectangular: Flag,
    pub c_rectangular: Flag,
    pub alpha_rectangular: Flag,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub cohen_macaulay: Flag,
    pub gorenstein: Flag,
    pub free_for_stored: Flag,
    pub free_some_arrangement: Flag,
    pub free_all_arrangements: Flag,
    pub complete_intersection: Flag,
    pub rectangular: Flag,
    pub c_rectangular: Flag,
    pub alpha_rectangular: Flag,
    /// One entry per valid ray set; for numerical semigroups, per generator.
    pub by_ray_set: Vec<RaySetFlags>,
    pub alpha_rectangular_every_generator: Flag,
    pub betti_sorted: Flag,
    pub betti_isolated_sorted: Flag,
    pub betti_divisible: Flag,
    pub betti_isolated_divisible: Flag,
    pub single_betti: Flag,
    pub single_betti_minimal: Flag,
}

/// Names of the family chain for numerical semigroups, smallest first.
pub const CHAIN: [&str; 7] = [
    "single_betti",
    "betti_divisible",
    "betti_sorted",
    "ci_single_betti_minimal",
    "alpha_rectangular",
    "free_some_arrangement",
    "complete_intersection",
];

impl ClassificationReport {
    /// Membership in each family of [`CHAIN`], when all are decided.
    pub fn chain_levels(&self) -> Option<[bool; 7]> {
        let ci_min = match (self.complete_intersection.holds, self.single_betti_minimal.holds) {
            (Some(a), Some(b)) => Some(a && b),
            _ => None,
        };
        let v = [
            self.single_betti.holds,
            self.betti_divisible.holds,
            self.betti_sorted.holds,
            ci_min,
            self.alpha_rectangular.holds,
            self.free_some_arrangement.holds,
            self.complete_intersection.holds,
        ];
        let mut out = [false; 7];
        for (o, x) in out.iter_mut().zip(v) {
            *o = x?;
        }
        Some(out)
    }

    /// Broken implications `CHAIN[i] => CHAIN[j]`, `i < j`.
    pub fn chain_violations(&self) -> Vec<(&'static str, &'static str)> {
        let Some(v) = self.chain_levels() else { return Vec::new() };
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] && !v[j] {
                    out.push((CHAIN[i], CHAIN[j]));
                }
            }
        }
        out
    }
}

/// Every predicate; Betti dependent flags stay undecided when the profile
/// cannot be computed exactly.
pub fn classify(s: &Semigroup) -> Result<ClassificationReport> {
    classify_bounded(s, None)
}

pub fn classify_bounded(s: &Semigroup, degree_bound: Option<u64>) -> Result<ClassificationReport> {
    let profile = betti::betti_profile_bounded(s, degree_bound);
    let p: Option<&BettiProfile> = match &profile {
        Ok(p) if p.complete => Some(p),
        _ => None,
    };
    let missing = match &profile {
        Ok(_) => "Betti profile is incomplete".to_string(),
        Err(e) => e.to_string(),
    };
    let with_p = |f: &dyn Fn(&BettiProfile) -> Result<Flag>| match p {
        Some(p) => lift(f(p)),
        None => Flag::unknown(missing.clone()),
    };

    let simplicial = s.is_simplicial();
    let not_simplicial = || Flag::unknown("not simplicial");

    let cohen_macaulay = if simplicial { lift(s.is_cohen_macaulay().map(|b| Flag::new(b, None))) } else { not_simplicial() };
    let gorenstein = match cohen_macaulay.holds {
        Some(true) => lift(s.is_gorenstein().map(|b| Flag::new(b, None))),
        Some(false) => Flag::new(false, None).with_note("not Cohen-Macaulay"),
        None => not_simplicial(),
    };
    let (free_for_stored, free_some_arrangement, free_all_arrangements) = if simplicial {
        let stored = lift((|| {
            let a = Arrangement::stored(s)?;
            let k = constants::arrangement_constants(s, &a)?;
            Ok(Flag::new(k.is_free(), Some(Witness::Constants(k))))
        })());
        let some = lift((|| {
            Ok(match free_some_arrangement(s)? {
                Some(a) => Flag::new(true, Some(Witness::Constants(constants::arrangement_constants(s, &a)?))),
                None => Flag::new(false, None),
            })
        })());
        let all = lift((|| {
            let (all, w) = is_free_all_arrangements(s)?;
            Ok(Flag::new(all, w.map(|a| Witness::Arrangement { order: a.order().to_vec() })))
        })());
        (stored, some, all)
    } else {
        (not_simplicial(), not_simplicial(), not_simplicial())
    };
    let complete_intersection = with_p(&|p| {
        let ci = p.elements.iter().map(|f| f.nc() - 1).sum::<usize>() == s.codim();
        Ok(Flag::new(ci, None))
    });

    let mut by_ray_set = Vec::new();
    if simplicial {
        for rays in s.valid_ray_sets()? {
            let rect = lift(rectangular_for(s, &rays).map(|b| Flag::new(b.is_some(), b.map(Witness::Box))));
            let c_rect = lift(is_c_rectangular(s, &rays).map(|(ok, b)| Flag::new(ok, b.map(Witness::Box))));
            let a_rect = lift(is_alpha_rectangular(s, &rays).map(|(ok, b)| Flag::new(ok, Some(Witness::Box(b)))));
            by_ray_set.push(RaySetFlags { rays, rectangular: rect, c_rectangular: c_rect, alpha_rectangular: a_rect });
        }
    }
    let any = |get: fn(&RaySetFlags) -> &Flag| {
        if !simplicial {
            return not_simplicial();
        }
        if let Some(r) = by_ray_set.iter().find(|r| get(r).is_true()) {
            return get(r).clone();
        }
        if by_ray_set.iter().all(|r| get(r).holds == Some(false)) {
            Flag::new(false, None)
        } else {
            Flag::unknown("undecided for some ray set")
        }
    };
    let rectangular = any(|r| &r.rectangular);
    let c_rectangular = any(|r| &r.c_rectangular);
    let alpha_rectangular = any(|r| &r.alpha_rectangular);
    let alpha_rectangular_every_generator = if s.is_numerical() {
        let all = by_ray_set.iter().all(|r| r.alpha_rectangular.is_true());
        let bad = by_ray_set.iter().find(|r| !r.alpha_rectangular.is_true());
        let mut f = Flag::new(all, None);
        if let Some(r) = bad {
            f.note = Some(format!("fails for generator {}", s.gen(r.rays[0])));
        }
        f
    } else {
        Flag::unknown("numerical semigroups only")
    };

    Ok(ClassificationReport {
        cohen_macaulay,
        gorenstein,
        free_for_stored,
        free_some_arrangement,
        free_all_arrangements,
        complete_intersection,
        rectangular,
        c_rectangular,
        alpha_rectangular,
        by_ray_set,
        alpha_rectangular_every_generator,
        betti_sorted: with_p(&|p| is_betti_sorted(s, p)),
        betti_isolated_sorted: with_p(&|p| is_betti_isolated_sorted(s, p)),
        betti_divisible: with_p(&|p| is_betti_divisible(s, p)),
        betti_isolated_divisible: with_p(&|p| is_betti_isolated_divisible(s, p)),
        single_betti: with_p(&has_single_betti),
        single_betti_minimal: with_p(&|p| has_single_betti_minimal(s, p)),
    })
}
