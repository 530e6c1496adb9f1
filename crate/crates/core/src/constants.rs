//! Per-arrangement constants `c_bar`, `c_star`, `c` and `alpha`.
//!
//! For a generator `n_i` and a prefix `P` of an arrangement:
//! `c_bar` is the least `c` with `c n_i` in the group of `P`, `c_star` the
//! least `c` with `c n_i` in the monoid of `P`. `c_i` is the least `c` with
//! `c n_i` in the monoid of all other generators and `alpha_i` the largest
//! `h` with `h n_i` in the Apery set of the rays.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlin::{self, LatticeBasis};
use crate::natvec::{Element, NatVec};
use crate::semigroup::{descent, Semigroup};

/// A permutation of generator indices whose first `rays` entries form a
/// valid set of extremal rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Arrangement {
    order: Vec<usize>,
    rays: usize,
}

impl Arrangement {
    pub fn new(s: &Semigroup, order: Vec<usize>) -> Result<Self> {
        let e = s.embedding_dimension();
        let mut seen = vec![false; e];
        if order.len() != e {
            return Err(Error::InvalidArrangement(format!("expected {e} indices, got {}", order.len())));
        }
        for &i in &order {
            if i >= e || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArrangement(format!("not a permutation: {order:?}")));
            }
        }
        let r = s.require_simplicial()?;
        let mut rays = order[..r].to_vec();
        rays.sort();
        if !s.is_ray_set(&rays)? {
            return Err(Error::InvalidArrangement("leading generators are not extremal rays".into()));
        }
        Ok(Arrangement { order, rays: r })
    }

    /// Generators in stored order.
    pub fn stored(s: &Semigroup) -> Result<Self> {
        Arrangement::new(s, (0..s.embedding_dimension()).collect())
    }

    /// Caller guarantees validity.
    pub(crate) fn from_unchecked(order: Vec<usize>, rays: usize) -> Self {
        Arrangement { order, rays }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rays(&self) -> usize {
        self.rays
    }

    pub fn ray_indices(&self) -> Vec<usize> {
        let mut r = self.order[..self.rays].to_vec();
        r.sort();
        r
    }

    /// Mask of generators placed before position `pos`.
    pub fn mask_before(&self, pos: usize) -> u64 {
        self.order[..pos].iter().fold(0, |m, &i| m | 1 << i)
    }
}

fn gens_in(s: &Semigroup, mask: u64) -> Vec<NatVec> {
    s.gens().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g.clone()).collect()
}

/// `(c_bar, c_star)` of generator `i` over the generators in `mask`.
pub(crate) fn prefix_constants(s: &Semigroup, mask: u64, i: usize) -> Result<(Option<u64>, Option<u64>)> {
    if let Some(v) = s.cache.prefix_constants.lock().unwrap().get(&(mask, i)) {
        return Ok(*v);
    }
    let v = if s.ambient_dim() == 1 { prefix_constants_1d(s, mask, i) } else { prefix_constants_affine(s, mask, i)? };
    s.cache.prefix_constants.lock().unwrap().insert((mask, i), v);
    Ok(v)
}

/// Freeness of one step: `c_bar = c_star` for generator `i` over `mask`.
pub(crate) fn free_step(s: &Semigroup, mask: u64, i: usize) -> Result<bool> {
    if s.ambient_dim() == 1 && mask != 0 {
        let n = s.gen(i)[0];
        let g = s.gens().iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).fold(0u64, |g, (_, x)| g.gcd(&x[0]));
        let bar = g / g.gcd(&n);
        // a minimal generator never lies in the monoid of the others
        if bar == 1 {
            return Ok(false);
        }
        return Ok(s.submonoid(mask).contains(bar * n));
    }
    let (bar, star) = prefix_constants(s, mask, i)?;
    Ok(bar.is_some() && bar == star)
}

pub(crate) fn prefix_star(s: &Semigroup, mask: u64, i: usize) -> Result<Option<u64>> {
    Ok(prefix_constants(s, mask, i)?.1)
}

fn prefix_constants_1d(s: &Semigroup, mask: u64, i: usize) -> (Option<u64>, Option<u64>) {
    if mask == 0 {
        return (None, None);
    }
    let sub = s.submonoid(mask);
    let n = s.gen(i)[0];
    let bar = sub.gcd() / sub.gcd().gcd(&n);
    let mut c = bar;
    while !sub.contains(c * n) {
        c += bar;
    }
    (Some(bar), Some(c))
}

fn prefix_constants_affine(s: &Semigroup, mask: u64, i: usize) -> Result<(Option<u64>, Option<u64>)> {
    let prefix = gens_in(s, mask);
    let n = s.gen(i);
    let star = least_multiple_in_monoid(&prefix, n)?;
    let Some(star) = star else { return Ok((None, None)) };
    let lattice = LatticeBasis::new(&prefix)?;
    let ni = n.to_i64()?;
    let bar = (1..=star).find(|&c| {
        let v: Vec<i64> = ni.iter().map(|x| x * c as i64).collect();
        lattice.contains(&v).unwrap_or(false)
    });
    Ok((bar, Some(star)))
}

/// Least `c >= 1` with `c n` in `<gens>`, or `None` if no multiple is.
fn least_multiple_in_monoid(gens: &[NatVec], n: &NatVec) -> Result<Option<u64>> {
    if gens.is_empty() {
        return Ok(None);
    }
    let Some(cert) = intlin::cone_certificate(n, gens)? else { return Ok(None) };
    let bound = intlin::common_denominator(&cert)?;
    let mut memo = HashMap::new();
    for c in 1..=bound {
        if descent(gens, &n.scale(c)?, &mut memo) {
            return Ok(Some(c));
        }
    }
    Err(Error::Invariant(format!("cone certificate for {n} did not yield a monoid multiple")))
}

/// `c_star` at position `pos` (zero based) of an arrangement; `pos` must be
/// past the rays.
pub fn c_star(s: &Semigroup, arr: &Arrangement, pos: usize) -> Result<u64> {
    check_pos(arr, pos)?;
    prefix_constants(s, arr.mask_before(pos), arr.order[pos])?.1.ok_or_else(|| Error::Invariant("c_star undefined".into()))
}

/// `c_bar` at position `pos` (zero based) of an arrangement.
pub fn c_bar(s: &Semigroup, arr: &Arrangement, pos: usize) -> Result<u64> {
    check_pos(arr, pos)?;
    prefix_constants(s, arr.mask_before(pos), arr.order[pos])?.0.ok_or_else(|| Error::Invariant("c_bar undefined".into()))
}

fn check_pos(arr: &Arrangement, pos: usize) -> Result<()> {
    if pos < arr.rays || pos >= arr.order.len() {
        return Err(Error::InvalidArrangement(format!("position {pos} is not a non-ray position")));
    }
    Ok(())
}

/// `c_i` for every generator; `None` outside the set of atoms having a
/// multiple in the monoid of the others.
pub fn c_plain_all(s: &Semigroup) -> Result<Vec<Option<u64>>> {
    if let Some(v) = s.cache.c_plain.get() {
        return Ok(v.clone());
    }
    let e = s.embedding_dimension();
    let mut out = Vec::with_capacity(e);
    for i in 0..e {
        let v = if s.ambient_dim() == 1 {
            if e == 1 {
                None
            } else {
                let mask = s.full_mask()? & !(1u64 << i);
                prefix_constants_1d(s, mask, i).1
            }
        } else {
            let others: Vec<NatVec> = s.gens().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            least_multiple_in_monoid(&others, s.gen(i))?
        };
        out.push(v);
    }
    Ok(s.cache.c_plain.get_or_init(|| out).clone())
}

pub fn c_plain(s: &Semigroup, i: usize) -> Result<Option<u64>> {
    if i >= s.embedding_dimension() {
        return Err(Error::InvalidArrangement(format!("no generator {i}")));
    }
    Ok(c_plain_all(s)?[i])
}

/// `alpha_i` with respect to a valid ray set; `i` must not be a ray.
pub fn alpha(s: &Semigroup, rays: &[usize], i: usize) -> Result<u64> {
    if rays.contains(&i) {
        return Err(Error::InvalidArrangement(format!("generator {i} is a ray")));
    }
    let ap = s.apery_rays(rays)?;
    let set: HashSet<&NatVec> = ap.iter().collect();
    alpha_in(&set, s.gen(i))
}

pub(crate) fn alpha_in(ap: &HashSet<&NatVec>, n: &NatVec) -> Result<u64> {
    let mut h = 0;
    while ap.contains(&n.scale(h + 1)?) {
        h += 1;
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrangementConstants {
    /// Generator indices in arrangement order.
    pub arrangement: Vec<usize>,
    pub generators: Vec<Element>,
    pub rays: usize,
    pub c_bar: Vec<Option<u64>>,
    pub c_star: Vec<Option<u64>>,
    pub c: Vec<Option<u64>>,
    pub alpha: Vec<Option<u64>>,
    /// `d_i = gcd(n_1, ..., n_{i-1})`, numerical only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
}

impl ArrangementConstants {
    /// `c_bar_i = c_star_i` past the rays.
    pub fn is_free(&self) -> bool {
        self.c_bar[self.rays..].iter().zip(&self.c_star[self.rays..]).all(|(a, b)| a.is_some() && a == b)
    }
}

pub fn arrangement_constants(s: &Semigroup, arr: &Arrangement) -> Result<ArrangementConstants> {
    let e = s.embedding_dimension();
    let c_all = c_plain_all(s)?;
    let rays = arr.ray_indices();
    let mut out = ArrangementConstants {
        arrangement: arr.order.clone(),
        generators: arr.order.iter().map(|&i| Element(s.gen(i).clone())).collect(),
        rays: arr.rays,
        c_bar: vec![None; e],
        c_star: vec![None; e],
        c: arr.order.iter().map(|&i| c_all[i]).collect(),
        alpha: vec![None; e],
        d: None,
    };
    for pos in arr.rays..e {
        let (bar, star) = prefix_constants(s, arr.mask_before(pos), arr.order[pos])?;
        out.c_bar[pos] = bar;
        out.c_star[pos] = star;
        out.alpha[pos] = Some(alpha(s, &rays, arr.order[pos])?);
    }
    if s.is_numerical() {
        let mut d = Vec::with_capacity(e + 1);
        let mut g = 0u64;
        d.push(0);
        for &i in &arr.order {
            g = g.gcd(&s.gen(i)[0]);
            d.push(g);
        }
        out.d = Some(d[1..].to_vec());
    }
    Ok(out)
}

/// Whether some (`ForAll = false`) or every (`ForAll = true`) arrangement
/// satisfies `ok(prefix_mask, next)` at each non-ray step. Returns a
/// witness: a satisfying arrangement for the existential search, a failing
/// one for the universal search.
pub(crate) fn search_arrangements<F>(s: &Semigroup, for_all: bool, ok: F) -> Result<(bool, Option<Arrangement>)>
where
    F: Fn(u64, usize) -> Result<bool>,
{
    search_from(s, &s.valid_ray_sets()?, for_all, ok)
}

/// As [`search_arrangements`], over arrangements starting with one of the
/// given ray sets.
pub(crate) fn search_from<F>(s: &Semigroup, ray_sets: &[Vec<usize>], for_all: bool, ok: F) -> Result<(bool, Option<Arrangement>)>
where
    F: Fn(u64, usize) -> Result<bool>,
{
    let full = s.full_mask()?;
    let r = s.require_simplicial()?;
    let mut memo: HashSet<u64> = HashSet::new();
    for rays in ray_sets {
        let mask = rays.iter().fold(0u64, |m, &i| m | 1 << i);
        let mut path = rays.clone();
        let res = walk(s, mask, full, for_all, &ok, &mut memo, &mut path)?;
        if res != for_all {
            return Ok((res, Some(Arrangement::from_unchecked(path, r))));
        }
    }
    Ok((for_all, None))
}

fn walk<F>(s: &Semigroup, mask: u64, full: u64, for_all: bool, ok: &F, memo: &mut HashSet<u64>, path: &mut Vec<usize>) -> Result<bool>
where
    F: Fn(u64, usize) -> Result<bool>,
{
    if mask == full {
        return Ok(true);
    }
    // memo holds masks already known to give the non-witness answer
    if memo.contains(&mask) {
        return Ok(for_all);
    }
    for i in 0..s.embedding_dimension() {
        if mask >> i & 1 == 1 {
            continue;
        }
        path.push(i);
        let good = ok(mask, i)? && walk(s, mask | 1 << i, full, for_all, ok, memo, path)?;
        if good != for_all {
            complete_path(s, path);
            return Ok(good);
        }
        path.pop();
    }
    memo.insert(mask);
    Ok(for_all)
}

fn complete_path(s: &Semigroup, path: &mut Vec<usize>) {
    for i in 0..s.embedding_dimension() {
        if !path.contains(&i) {
            path.push(i);
        }
    }
}

/// A free arrangement, if any exists.
pub fn find_free_arrangement(s: &Semigroup) -> Result<Option<Arrangement>> {
    let (found, arr) = search_arrangements(s, false, |mask, i| free_step(s, mask, i))?;
    Ok(if found { arr } else { None })
}

/// Whether every arrangement is free; on failure also returns a non-free one.
pub fn free_for_all_arrangements(s: &Semigroup) -> Result<(bool, Option<Arrangement>)> {
    search_arrangements(s, true, |mask, i| free_step(s, mask, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> Semigroup {
        Semigroup::numerical(g).unwrap()
    }

    #[test]
    fn star_constants() {
        let s = ns(&[24, 36, 26, 39]);
        let a = Arrangement::stored(&s).unwrap();
        assert_eq!(c_star(&s, &a, 1).unwrap(), 2);
        assert_eq!(c_bar(&s, &a, 2).unwrap(), 6);
        let s = ns(&[30, 42, 105, 140]);
        let a = Arrangement::stored(&s).unwrap();
        assert_eq!(c_star(&s, &a, 3).unwrap(), 3);
        assert_eq!(c_bar(&s, &a, 1).unwrap(), 5);
        let s = ns(&[2, 3]);
        assert_eq!(c_star(&s, &Arrangement::stored(&s).unwrap(), 1).unwrap(), 2);
        assert!(c_star(&s, &Arrangement::stored(&s).unwrap(), 0).is_err());
    }

    #[test]
    fn plain_constants() {
        let c = |g: &[u64]| c_plain_all(&ns(g)).unwrap().into_iter().map(Option::unwrap).collect::<Vec<_>>();
        assert_eq!(c(&[16, 20, 30, 45]), vec![5, 3, 2, 2]);
        assert_eq!(c(&[3, 4, 5]), vec![3, 2, 2]);
        assert_eq!(c(&[2, 3]), vec![3, 2]);
        assert_eq!(c_plain_all(&ns(&[1])).unwrap(), vec![None]);
    }

    #[test]
    fn affine_plain_constants() {
        let s = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
        assert_eq!(c_plain_all(&s).unwrap(), vec![None, Some(3), Some(2)]);
        let m = Semigroup::parse("(1,0,1);(0,1,0);(1,1,0);(0,0,1)").unwrap();
        assert_eq!(c_plain_all(&m).unwrap(), vec![None; 4]);
    }

    #[test]
    fn alphas() {
        let s = ns(&[16, 20, 30, 45]);
        assert_eq!(alpha(&s, &[1], 0).unwrap(), 4);
        let s = ns(&[2, 3]);
        assert_eq!(alpha(&s, &[0], 1).unwrap(), 1);
        let s = ns(&[4, 6, 9]);
        assert_eq!(alpha(&s, &[0], 1).unwrap(), 1);
        assert_eq!(alpha(&s, &[0], 2).unwrap(), 1);
    }

    #[test]
    fn c_bar_need_not_be_coprime() {
        let s = ns(&[4, 6, 9]);
        let k = arrangement_constants(&s, &Arrangement::stored(&s).unwrap()).unwrap();
        assert_eq!(k.c_bar, vec![None, Some(2), Some(2)]);
        assert!(k.is_free());
    }

    #[test]
    fn arrangement_validation() {
        let s = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
        assert!(Arrangement::new(&s, vec![0, 2, 1]).is_ok());
        assert!(Arrangement::new(&s, vec![2, 1, 0]).is_err());
        assert!(Arrangement::new(&s, vec![0, 0, 1]).is_err());
        let k = arrangement_constants(&s, &Arrangement::stored(&s).unwrap()).unwrap();
        assert_eq!(k.c_star[2], Some(2));
        assert_eq!(k.c_bar[2], Some(2));
        assert!(k.is_free());
    }
}
