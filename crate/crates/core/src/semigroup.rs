//! Semigroup descriptors, membership, Apery sets, Frobenius number and the
//! Cohen-Macaulay / Gorenstein tests.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::betti::BettiProfile;
use crate::error::{Error, Result};
use crate::intlin::{self, Combinations, LatticeBasis};
use crate::natvec::{format_generators, NatVec};

pub const DEFAULT_FIBER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Numerical,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub fiber_cap: usize,
    /// Accept one-dimensional inputs whose generators have gcd > 1.
    pub allow_non_numerical: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { fiber_cap: DEFAULT_FIBER_CAP, allow_non_numerical: false }
    }
}

/// A finitely generated submonoid of `N` (generators need not be coprime).
#[derive(Debug, Clone)]
pub struct Monoid1D {
    d: u64,
    m: u64,
    ap: Vec<u64>,
}

impl Monoid1D {
    /// `gens` must be non-empty and non-zero.
    pub fn new(gens: &[u64]) -> Self {
        let d = gens.iter().fold(0u64, |a, &b| a.gcd(&b));
        let red: Vec<u64> = gens.iter().map(|g| g / d).collect();
        let m = *red.iter().min().expect("non-empty generators");
        let ap = residue_minima(&red, m).into_iter().map(|x| x.expect("coprime generators reach every residue")).collect();
        Monoid1D { d, m, ap }
    }

    pub fn gcd(&self) -> u64 {
        self.d
    }

    pub fn contains(&self, x: u64) -> bool {
        if x % self.d != 0 {
            return false;
        }
        let y = x / self.d;
        y >= self.ap[(y % self.m) as usize]
    }

    /// Largest multiple of the gcd that is not in the monoid, or -gcd.
    pub fn frobenius(&self) -> i64 {
        let max = *self.ap.iter().max().unwrap_or(&0);
        (max as i64 - self.m as i64) * self.d as i64
    }
}

/// Smallest element of `<gens>` in each residue class modulo `modulus`
/// (shortest paths on the residue graph).
pub fn residue_minima(gens: &[u64], modulus: u64) -> Vec<Option<u64>> {
    let n = modulus as usize;
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[0] = Some(0);
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((w, r))) = heap.pop() {
        if dist[r] != Some(w) {
            continue;
        }
        for &g in gens {
            let nw = w + g;
            let nr = ((r as u64 + g) % modulus) as usize;
            if dist[nr].is_none_or(|old| nw < old) {
                dist[nr] = Some(nw);
                heap.push(Reverse((nw, nr)));
            }
        }
    }
    dist
}

/// Membership in `<gens>` for arbitrary non-zero generators.
pub fn monoid_contains(gens: &[NatVec], v: &NatVec) -> bool {
    if v.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    if v.len() == 1 {
        let g: Vec<u64> = gens.iter().map(|g| g[0]).collect();
        return Monoid1D::new(&g).contains(v[0]);
    }
    descent(gens, v, &mut HashMap::new())
}

/// Memoized descent `v in S  <=>  v - g in S` for some generator `g`.
pub(crate) fn descent(gens: &[NatVec], target: &NatVec, memo: &mut HashMap<NatVec, bool>) -> bool {
    if target.is_zero() {
        return true;
    }
    if let Some(&b) = memo.get(target) {
        return b;
    }
    let mut stack: Vec<(NatVec, usize)> = vec![(target.clone(), 0)];
    while let Some((v, i)) = stack.last_mut() {
        if *i >= gens.len() {
            let v = v.clone();
            memo.insert(v, false);
            stack.pop();
            continue;
        }
        let g = &gens[*i];
        *i += 1;
        let Some(w) = v.checked_sub(g) else { continue };
        let hit = w.is_zero() || memo.get(&w) == Some(&true);
        if hit {
            for (u, _) in stack {
                memo.insert(u, true);
            }
            return true;
        }
        if !memo.contains_key(&w) {
            stack.push((w, 0));
        }
    }
    false
}

/// `(c_bar, c_star)` of one generator after a prefix.
pub(crate) type PrefixConstants = (Option<u64>, Option<u64>);

#[derive(Default)]
pub(crate) struct Cache {
    pub numeric: OnceLock<Monoid1D>,
    pub prefix: OnceLock<Vec<Monoid1D>>,
    pub member: Mutex<HashMap<NatVec, bool>>,
    pub apery: Mutex<HashMap<u64, Arc<Vec<NatVec>>>>,
    pub submonoid: Mutex<HashMap<u64, Arc<Monoid1D>>>,
    /// `(prefix mask, generator) -> (c_bar, c_star)`
    pub prefix_constants: Mutex<HashMap<(u64, usize), PrefixConstants>>,
    pub c_plain: OnceLock<Vec<Option<u64>>>,
    pub betti: OnceLock<Arc<BettiProfile>>,
}

/// An affine semigroup given by its minimal generators.
///
/// Numerical semigroups keep the input order of their generators. Simplicial
/// affine semigroups have their extremal rays moved to the front.
pub struct Semigroup {
    gens: Vec<NatVec>,
    dim: usize,
    rank: usize,
    kind: Kind,
    rays: Option<usize>,
    options: Options,
    pub(crate) cache: Cache,
}

impl Clone for Semigroup {
    fn clone(&self) -> Self {
        Semigroup {
            gens: self.gens.clone(),
            dim: self.dim,
            rank: self.rank,
            kind: self.kind,
            rays: self.rays,
            options: self.options,
            cache: Cache::default(),
        }
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup<{}>", format_generators(&self.gens))
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", format_generators(&self.gens))
    }
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for Semigroup {}

impl Semigroup {
    pub fn new(gens: Vec<NatVec>) -> Result<Self> {
        Self::with_options(gens, Options::default())
    }

    pub fn numerical(gens: &[u64]) -> Result<Self> {
        Self::new(gens.iter().map(|&g| NatVec::scalar(g)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::natvec::parse_generators(text)?)
    }

    pub fn with_options(input: Vec<NatVec>, options: Options) -> Result<Self> {
        let dim = input.first().ok_or(Error::EmptyInput)?.len();
        if dim == 0 {
            return Err(Error::ZeroGenerator);
        }
        for g in &input {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let mut gens: Vec<NatVec> = Vec::with_capacity(input.len());
        for g in input {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        let gcd = if dim == 1 { gens.iter().fold(0u64, |a, g| a.gcd(&g[0])) } else { 0 };
        if dim == 1 && gcd != 1 && !options.allow_non_numerical {
            return Err(Error::NotNumerical(gcd));
        }
        let mut i = 0;
        while i < gens.len() {
            let others: Vec<NatVec> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if monoid_contains(&others, &gens[i]) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        let rank = intlin::group_rank(&gens)?;
        let kind = if dim == 1 && gcd == 1 { Kind::Numerical } else { Kind::Affine };
        let mut rays = None;
        if dim == 1 {
            rays = Some(1);
        } else if let Some(set) = first_ray_set(&gens, rank)? {
            let mut ordered: Vec<NatVec> = set.iter().map(|&i| gens[i].clone()).collect();
            ordered.extend(gens.iter().enumerate().filter(|(i, _)| !set.contains(i)).map(|(_, g)| g.clone()));
            gens = ordered;
            rays = Some(rank);
        }
        Ok(Semigroup { gens, dim, rank, kind, rays, options, cache: Cache::default() })
    }

    pub fn with_fiber_cap(mut self, cap: usize) -> Self {
        self.options.fiber_cap = cap;
        self
    }

    pub fn gens(&self) -> &[NatVec] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &NatVec {
        &self.gens[i]
    }

    /// Generators of a numerical semigroup as plain integers.
    pub fn scalar_gens(&self) -> Vec<u64> {
        self.gens.iter().map(|g| g[0]).collect()
    }

    pub fn embedding_dimension(&self) -> usize {
        self.gens.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `e - dim(S)`: the number of non-ray generators in a simplicial semigroup.
    pub fn codim(&self) -> usize {
        self.gens.len() - self.rank
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_numerical(&self) -> bool {
        self.kind == Kind::Numerical
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.is_some()
    }

    pub fn fiber_cap(&self) -> usize {
        self.options.fiber_cap
    }

    /// Number of extremal rays placed first, if simplicial.
    pub fn ray_count(&self) -> Option<usize> {
        self.rays
    }

    pub fn require_simplicial(&self) -> Result<usize> {
        self.rays.ok_or(Error::NotSimplicial)
    }

    pub fn require_numerical(&self) -> Result<()> {
        if self.is_numerical() {
            Ok(())
        } else {
            Err(Error::Unsupported("operation is only defined for numerical semigroups".into()))
        }
    }

    pub fn zero(&self) -> NatVec {
        NatVec::zeros(self.dim)
    }

    pub fn full_mask(&self) -> Result<u64> {
        let e = self.gens.len();
        if e > 64 {
            return Err(Error::Unsupported("arrangement searches support at most 64 generators".into()));
        }
        Ok(if e == 64 { u64::MAX } else { (1u64 << e) - 1 })
    }

    pub(crate) fn numeric(&self) -> &Monoid1D {
        self.cache.numeric.get_or_init(|| Monoid1D::new(&self.scalar_gens()))
    }

    /// Membership structures for `<n_1..n_k>`, `k = 1..e` (numerical only).
    pub(crate) fn prefix_monoids(&self) -> &[Monoid1D] {
        self.cache.prefix.get_or_init(|| {
            let g = self.scalar_gens();
            (1..=g.len()).map(|k| Monoid1D::new(&g[..k])).collect()
        })
    }

    /// Membership structure of the submonoid generated by a subset (numerical only).
    pub(crate) fn submonoid(&self, mask: u64) -> Arc<Monoid1D> {
        let mut map = self.cache.submonoid.lock().unwrap();
        map.entry(mask)
            .or_insert_with(|| {
                let g: Vec<u64> = self.gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g[0]).collect();
                Arc::new(Monoid1D::new(&g))
            })
            .clone()
    }

    pub fn contains(&self, v: &NatVec) -> bool {
        if v.len() != self.dim {
            return false;
        }
        if self.dim == 1 {
            return self.numeric().contains(v[0]);
        }
        let mut memo = self.cache.member.lock().unwrap();
        descent(&self.gens, v, &mut memo)
    }

    pub fn contains_u64(&self, x: u64) -> bool {
        self.dim == 1 && self.numeric().contains(x)
    }

    /// `a <=_S b`, i.e. `b - a` lies in the semigroup.
    pub fn le_s(&self, a: &NatVec, b: &NatVec) -> bool {
        b.checked_sub(a).is_some_and(|d| self.contains(&d))
    }

    pub fn evaluate(&self, x: &NatVec) -> Result<NatVec> {
        if x.len() != self.gens.len() {
            return Err(Error::DimensionMismatch { expected: self.gens.len(), got: x.len() });
        }
        let mut acc = self.zero();
        for (g, &k) in self.gens.iter().zip(x.coords()) {
            if k > 0 {
                acc = acc.add(&g.scale(k)?)?;
            }
        }
        Ok(acc)
    }

    pub fn multiplicity(&self) -> Result<u64> {
        self.require_numerical()?;
        Ok(self.gens.iter().map(|g| g[0]).min().unwrap())
    }

    pub fn frobenius(&self) -> Result<i64> {
        self.require_numerical()?;
        Ok(self.numeric().frobenius())
    }

    /// Number of gaps.
    pub fn genus(&self) -> Result<u64> {
        self.require_numerical()?;
        let n = self.numeric();
        Ok(n.ap.iter().map(|w| w / n.m).sum())
    }

    /// All `r`-subsets of generators that are independent and whose cone
    /// contains every generator, in lexicographic order.
    pub fn valid_ray_sets(&self) -> Result<Vec<Vec<usize>>> {
        if self.dim == 1 {
            return Ok((0..self.gens.len()).map(|i| vec![i]).collect());
        }
        let mut out = Vec::new();
        for set in Combinations::new(self.gens.len(), self.rank) {
            if is_ray_set(&self.gens, &set)? {
                out.push(set);
            }
        }
        Ok(out)
    }

    pub fn is_ray_set(&self, set: &[usize]) -> Result<bool> {
        if set.len() != self.rank {
            return Ok(false);
        }
        if self.dim == 1 {
            return Ok(true);
        }
        is_ray_set(&self.gens, set)
    }

    /// Elements of the semigroup with total degree at most `bound`, sorted.
    pub fn elements_up_to_degree(&self, bound: u64) -> Result<Vec<NatVec>> {
        let mut seen: BTreeSet<NatVec> = BTreeSet::new();
        let mut frontier = vec![self.zero()];
        seen.insert(self.zero());
        while let Some(v) = frontier.pop() {
            for g in &self.gens {
                let w = v.add(g)?;
                if w.total_degree() <= bound && seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `Ap(S; base) = { s in S : s - b not in S for all b in base }`, sorted.
    ///
    /// Numerical semigroups accept any non-empty base of non-zero elements.
    /// Affine semigroups need the base to contain a valid set of extremal
    /// ray generators, otherwise the set is infinite or unsupported.
    pub fn apery(&self, base: &[NatVec]) -> Result<Vec<NatVec>> {
        if base.is_empty() {
            return Err(Error::InfiniteApery("empty base".into()));
        }
        for b in base {
            if b.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: b.len() });
            }
            if b.is_zero() {
                return Err(Error::InfiniteApery("zero in base".into()));
            }
            if !self.contains(b) {
                return Err(Error::NotInSemigroup(b.to_string()));
            }
        }
        if self.is_numerical() {
            let mut sets = base.iter().map(|b| self.apery_numerical(b[0]));
            let first: BTreeSet<u64> = sets.next().unwrap().into_iter().collect();
            let inter = sets.fold(first, |acc, s| {
                let s: BTreeSet<u64> = s.into_iter().collect();
                acc.intersection(&s).copied().collect()
            });
            return Ok(inter.into_iter().map(NatVec::scalar).collect());
        }
        let idx: Vec<Option<usize>> = base.iter().map(|b| self.gens.iter().position(|g| g == b)).collect();
        let present: Vec<usize> = idx.iter().flatten().copied().collect();
        let rays = self
            .valid_ray_sets()?
            .into_iter()
            .find(|set| set.iter().all(|i| present.contains(i)))
            .ok_or_else(|| Error::InfiniteApery("base does not contain a set of extremal ray generators".into()))?;
        let ap = self.apery_rays(&rays)?;
        Ok(ap.iter().filter(|w| base.iter().all(|b| !self.le_s(b, w))).cloned().collect())
    }

    /// Numerical `Ap(S; n)` indexed by residue modulo `n`.
    pub fn apery_numerical(&self, n: u64) -> Vec<u64> {
        residue_minima(&self.scalar_gens(), n).into_iter().map(|x| x.expect("numerical semigroup")).collect()
    }

    /// `Ap(S; {n_i : i in rays})` for a valid ray set, cached, sorted.
    pub fn apery_rays(&self, rays: &[usize]) -> Result<Arc<Vec<NatVec>>> {
        let mask = rays.iter().fold(0u64, |m, &i| m | 1 << i);
        if let Some(a) = self.cache.apery.lock().unwrap().get(&mask) {
            return Ok(a.clone());
        }
        if !self.is_ray_set(rays)? {
            return Err(Error::InfiniteApery("not a set of extremal ray generators".into()));
        }
        let ap = if self.is_numerical() {
            let mut v: Vec<NatVec> = self.apery_numerical(self.gens[rays[0]][0]).into_iter().map(NatVec::scalar).collect();
            v.sort();
            v
        } else {
            self.apery_affine(rays, mask)?
        };
        let ap = Arc::new(ap);
        self.cache.apery.lock().unwrap().insert(mask, ap.clone());
        Ok(ap)
    }

    fn apery_affine(&self, rays: &[usize], mask: u64) -> Result<Vec<NatVec>> {
        let rest: Vec<usize> = (0..self.gens.len()).filter(|i| !rays.contains(i)).collect();
        let mut bounds = Vec::with_capacity(rest.len());
        let mut prefix = mask;
        for &i in &rest {
            let star = crate::constants::prefix_star(self, prefix, i)?
                .ok_or_else(|| Error::Invariant("non-ray generator outside the cone of the rays".into()))?;
            bounds.push(star);
            prefix |= 1 << i;
        }
        let mut out = BTreeSet::new();
        let mut lambda = vec![0u64; rest.len()];
        loop {
            let mut s = self.zero();
            for (&i, &k) in rest.iter().zip(&lambda) {
                if k > 0 {
                    s = s.add(&self.gens[i].scale(k)?)?;
                }
            }
            if rays.iter().all(|&j| !self.le_s(&self.gens[j], &s)) {
                out.insert(s);
            }
            let mut pos = 0;
            loop {
                if pos == lambda.len() {
                    return Ok(out.into_iter().collect());
                }
                lambda[pos] += 1;
                if lambda[pos] < bounds[pos] {
                    break;
                }
                lambda[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Apery set with respect to the stored rays.
    pub fn apery_stored(&self) -> Result<Arc<Vec<NatVec>>> {
        let r = self.require_simplicial()?;
        self.apery_rays(&(0..r).collect::<Vec<_>>())
    }

    pub fn is_cohen_macaulay(&self) -> Result<bool> {
        if self.is_numerical() {
            return Ok(true);
        }
        let r = self.require_simplicial()?;
        let ap = self.apery_stored()?;
        let lattice = LatticeBasis::new(&self.gens[..r])?;
        for (i, a) in ap.iter().enumerate() {
            let ai = a.to_i64()?;
            for b in &ap[i + 1..] {
                let diff: Vec<i64> = ai.iter().zip(b.to_i64()?).map(|(x, y)| x - y).collect();
                if lattice.contains(&diff)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Maximal elements of the stored Apery set with respect to `<=_S`.
    pub fn apery_maximals(&self, ap: &[NatVec]) -> Vec<NatVec> {
        ap.iter().filter(|w| !ap.iter().any(|v| v != *w && self.le_s(w, v))).cloned().collect()
    }

    pub fn is_gorenstein(&self) -> Result<bool> {
        if !self.is_cohen_macaulay()? {
            return Err(Error::NotCohenMacaulay);
        }
        let ap = self.apery_stored()?;
        Ok(self.apery_maximals(&ap).len() == 1)
    }
}

fn is_ray_set(gens: &[NatVec], set: &[usize]) -> Result<bool> {
    let rays: Vec<NatVec> = set.iter().map(|&i| gens[i].clone()).collect();
    if !intlin::is_independent(&rays)? {
        return Ok(false);
    }
    for (i, g) in gens.iter().enumerate() {
        if !set.contains(&i) && !intlin::in_rational_cone(g, &rays)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn first_ray_set(gens: &[NatVec], rank: usize) -> Result<Option<Vec<usize>>> {
    for set in Combinations::new(gens.len(), rank) {
        if is_ray_set(gens, &set)? {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> Semigroup {
        Semigroup::numerical(g).unwrap()
    }

    fn scalars(v: &[NatVec]) -> Vec<u64> {
        v.iter().map(|x| x[0]).collect()
    }

    #[test]
    fn removes_redundant_generators() {
        assert_eq!(ns(&[4, 6, 5, 10]).scalar_gens(), vec![4, 6, 5]);
        assert_eq!(ns(&[3, 3, 4, 5, 8]).scalar_gens(), vec![3, 4, 5]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Semigroup::new(vec![]).unwrap_err(), Error::EmptyInput);
        assert_eq!(Semigroup::numerical(&[0, 3]).unwrap_err(), Error::ZeroGenerator);
        assert_eq!(Semigroup::numerical(&[4, 6]).unwrap_err(), Error::NotNumerical(2));
        assert!(Semigroup::parse("(1,0);(1)").is_err());
        let opts = Options { allow_non_numerical: true, ..Options::default() };
        let s = Semigroup::with_options(vec![NatVec::scalar(4), NatVec::scalar(6)], opts).unwrap();
        assert_eq!(s.kind(), Kind::Affine);
        assert!(s.contains(&NatVec::scalar(10)));
        assert!(!s.contains(&NatVec::scalar(2)));
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(ns(&[30, 42, 105, 140]).frobenius().unwrap(), 523);
        assert_eq!(ns(&[2, 3]).frobenius().unwrap(), 1);
        assert_eq!(ns(&[3, 4, 5]).frobenius().unwrap(), 2);
        assert_eq!(ns(&[1]).frobenius().unwrap(), -1);
        assert_eq!(ns(&[3, 4, 5]).genus().unwrap(), 2);
    }

    #[test]
    fn apery_sets() {
        let s = ns(&[4, 5, 6]);
        assert_eq!(scalars(&s.apery(&[NatVec::scalar(4)]).unwrap()), vec![0, 5, 6, 11]);
        assert_eq!(scalars(&ns(&[2, 3]).apery(&[NatVec::scalar(2)]).unwrap()), vec![0, 3]);
        assert_eq!(scalars(&ns(&[4, 6, 9]).apery(&[NatVec::scalar(4)]).unwrap()), vec![0, 6, 9, 15]);
        let a = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
        let ap = a.apery(&[NatVec::new(vec![1, 0]), NatVec::new(vec![0, 2])]).unwrap();
        assert_eq!(ap, vec![NatVec::new(vec![0, 0]), NatVec::new(vec![0, 3])]);
        assert!(matches!(a.apery(&[NatVec::new(vec![1, 0])]), Err(Error::InfiniteApery(_))));
    }

    #[test]
    fn simplicial_detection() {
        let a = Semigroup::parse("(0,2);(1,0);(0,3)").unwrap();
        assert_eq!(a.ray_count(), Some(2));
        assert_eq!(a.gens()[..2], [NatVec::new(vec![0, 2]), NatVec::new(vec![1, 0])]);
        let m = Semigroup::parse("(1,0,1);(0,1,0);(1,1,0);(0,0,1)").unwrap();
        assert!(!m.is_simplicial());
        assert_eq!(m.rank(), 3);
        assert!(m.contains(&NatVec::new(vec![1, 1, 1])));
        assert!(!m.contains(&NatVec::new(vec![1, 0, 0])));
    }

    #[test]
    fn cohen_macaulay_and_gorenstein() {
        assert!(ns(&[2, 3]).is_gorenstein().unwrap());
        assert!(!ns(&[3, 4, 5]).is_gorenstein().unwrap());
        assert!(ns(&[4, 6, 9]).is_gorenstein().unwrap());
        let a = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
        assert!(a.is_cohen_macaulay().unwrap());
        let b = Semigroup::parse("(4,0);(0,4);(1,3);(3,1)").unwrap();
        assert!(!b.is_cohen_macaulay().unwrap());
    }
}
