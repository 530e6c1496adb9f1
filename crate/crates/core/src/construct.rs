//! Gluings and the parametrized family of Betti divisible numerical
//! semigroups.

use num_integer::Integer;
use serde::Serialize;

use crate::betti::{self, BettiProfile};
use crate::constants;
use crate::error::{Error, Result};
use crate::natvec::{Element, NatVec};
use crate::semigroup::Semigroup;

/// `a1 S1 + a2 S2` for numerical `S1`, `S2`.
#[derive(Debug, Clone)]
pub struct GluingSpec {
    pub left: Semigroup,
    pub right: Semigroup,
    pub a1: u64,
    pub a2: u64,
}

#[derive(Debug, Clone)]
pub struct Glued {
    pub semigroup: Semigroup,
    /// `{a1 a2} ∪ a1 Betti(S1) ∪ a2 Betti(S2)`, ascending.
    pub predicted_betti: Vec<u64>,
}

fn is_min_gen(s: &Semigroup, x: u64) -> bool {
    s.scalar_gens().contains(&x)
}

/// Rejects specs that are not gluings, naming the failing condition.
pub fn check_gluing(spec: &GluingSpec) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidGluing(m.to_string()));
    if !spec.left.is_numerical() || !spec.right.is_numerical() {
        return bad("both parts must be numerical semigroups");
    }
    if spec.a1 == 0 || spec.a2 == 0 {
        return bad("multipliers must be positive");
    }
    if spec.a1.gcd(&spec.a2) != 1 {
        return bad("multipliers are not coprime");
    }
    if !spec.right.contains_u64(spec.a1) {
        return bad("a1 is not in S2");
    }
    if !spec.left.contains_u64(spec.a2) {
        return bad("a2 is not in S1");
    }
    if is_min_gen(&spec.right, spec.a1) {
        return bad("a1 is a minimal generator of S2");
    }
    if is_min_gen(&spec.left, spec.a2) {
        return bad("a2 is a minimal generator of S1");
    }
    Ok(())
}

fn scaled(s: &Semigroup, a: u64) -> Result<Vec<u64>> {
    s.scalar_gens().iter().map(|&g| g.checked_mul(a).ok_or(Error::Overflow)).collect()
}

fn scalar_betti(p: &BettiProfile) -> Vec<u64> {
    p.elements.iter().map(|f| f.element()[0]).collect()
}

pub fn glue_numerical(spec: &GluingSpec) -> Result<Glued> {
    check_gluing(spec)?;
    let mut gens = scaled(&spec.left, spec.a1)?;
    gens.extend(scaled(&spec.right, spec.a2)?);
    let semigroup = Semigroup::numerical(&gens)?;
    if semigroup.embedding_dimension() != gens.len() {
        return Err(Error::Invariant("gluing lost a minimal generator".into()));
    }
    let mut predicted = vec![spec.a1.checked_mul(spec.a2).ok_or(Error::Overflow)?];
    for (s, a) in [(&spec.left, spec.a1), (&spec.right, spec.a2)] {
        for b in scalar_betti(&*betti::betti_profile(s)?) {
            predicted.push(b.checked_mul(a).ok_or(Error::Overflow)?);
        }
    }
    predicted.sort_unstable();
    predicted.dedup();
    Ok(Glued { semigroup, predicted_betti: predicted })
}

/// `S = d S' + n_j N` split off at generator `j`.
#[derive(Debug, Clone)]
pub struct Split {
    pub j: usize,
    pub d: u64,
    /// `S'`, generators in the order of the remaining ones in `S`.
    pub inner: Semigroup,
}

/// The split of a numerical semigroup at generator `j` when it is a gluing.
pub fn split_off(s: &Semigroup, j: usize) -> Result<Option<Split>> {
    s.require_numerical()?;
    let g = s.scalar_gens();
    if g.len() < 2 || j >= g.len() {
        return Ok(None);
    }
    let d = g.iter().enumerate().filter(|(k, _)| *k != j).fold(0u64, |a, (_, &x)| a.gcd(&x));
    if d < 2 {
        return Ok(None);
    }
    let others: Vec<u64> = g.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x / d).collect();
    let inner = Semigroup::numerical(&others)?;
    let n = g[j];
    if !inner.contains_u64(n) || is_min_gen(&inner, n) {
        return Ok(None);
    }
    Ok(Some(Split { j, d, inner }))
}

/// Every split of a numerical semigroup that is a gluing, indexed by `j`.
pub fn splits(s: &Semigroup) -> Result<Vec<Option<Split>>> {
    (0..s.embedding_dimension()).map(|j| split_off(s, j)).collect()
}

/// Partition of the generators into two non-empty parts, each glued back
/// with multipliers `gcd(A)` and `gcd(B)`.
#[derive(Debug, Clone)]
pub struct PartitionGluing {
    pub part_a: Vec<usize>,
    pub a1: u64,
    pub a2: u64,
    pub left: Semigroup,
    pub right: Semigroup,
}

/// The gluing induced by a partition, or why it is not one.
pub fn partition_gluing(s: &Semigroup, part_a: &[usize]) -> Result<std::result::Result<PartitionGluing, String>> {
    s.require_numerical()?;
    let g = s.scalar_gens();
    let a: Vec<u64> = part_a.iter().map(|&i| g[i]).collect();
    let b: Vec<u64> = (0..g.len()).filter(|i| !part_a.contains(i)).map(|i| g[i]).collect();
    if a.is_empty() || b.is_empty() {
        return Ok(Err("both parts must be non-empty".into()));
    }
    let a1 = a.iter().fold(0, |x, &y| x.gcd(&y));
    let a2 = b.iter().fold(0, |x, &y| x.gcd(&y));
    let left = Semigroup::numerical(&a.iter().map(|x| x / a1).collect::<Vec<_>>())?;
    let right = Semigroup::numerical(&b.iter().map(|x| x / a2).collect::<Vec<_>>())?;
    let spec = GluingSpec { left, right, a1, a2 };
    Ok(match check_gluing(&spec) {
        Ok(()) => Ok(PartitionGluing { part_a: part_a.to_vec(), a1, a2, left: spec.left, right: spec.right }),
        Err(e) => Err(e.to_string()),
    })
}

/// Parameters `a`, `f` of a Betti divisible numerical semigroup:
/// `n_i = f_i * prod(a) / a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiDivisibleParams {
    pub a: Vec<u64>,
    pub f: Vec<u64>,
}

impl BettiDivisibleParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let e = self.a.len();
        if e < 2 {
            return bad("need at least two parameters".into());
        }
        if self.f.len() != e {
            return bad(format!("a has {e} entries, f has {}", self.f.len()));
        }
        for (i, &x) in self.a.iter().enumerate() {
            if x < 2 {
                return bad(format!("a_{} = {x} is below 2", i + 1));
            }
            for (j, &y) in self.a.iter().enumerate().skip(i + 1) {
                if x.gcd(&y) != 1 {
                    return bad(format!("a_{} and a_{} are not coprime", i + 1, j + 1));
                }
            }
        }
        if self.f[0] != 1 || self.f[1] != 1 {
            return bad("f_1 and f_2 must be 1".into());
        }
        for i in 1..e {
            if self.f[i] == 0 || self.f[i] % self.f[i - 1] != 0 {
                return bad(format!("f_{} does not divide f_{}", i, i + 1));
            }
            if self.f[i].gcd(&self.a[i]) != 1 {
                return bad(format!("f_{} and a_{} are not coprime", i + 1, i + 1));
            }
        }
        Ok(())
    }

    pub fn product(&self) -> Result<u64> {
        self.a.iter().try_fold(1u64, |p, &x| p.checked_mul(x).ok_or(Error::Overflow))
    }

    /// Generators in parameter order.
    pub fn generators(&self) -> Result<Vec<u64>> {
        self.validate()?;
        let p = self.product()?;
        self.a.iter().zip(&self.f).map(|(&a, &f)| (p / a).checked_mul(f).ok_or(Error::Overflow)).collect()
    }

    /// `{f_i prod(a) : i >= 2}`.
    pub fn predicted_betti(&self) -> Result<Vec<u64>> {
        let p = self.product()?;
        let mut v: Vec<u64> = self.f[1..].iter().map(|&f| f.checked_mul(p).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        v.dedup();
        Ok(v)
    }

    /// Frobenius number, `sum_{i >= 2} (a_i - 1) n_i - n_1`.
    pub fn frobenius(&self) -> Result<i64> {
        let n = self.generators()?;
        let mut acc: i128 = -(n[0] as i128);
        for (&a, &n) in self.a.iter().zip(&n).skip(1) {
            acc += (a as i128 - 1) * n as i128;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }
}

pub fn betti_divisible_from_params(p: &BettiDivisibleParams) -> Result<Semigroup> {
    let gens = p.generators()?;
    let s = Semigroup::numerical(&gens)?;
    if s.embedding_dimension() != gens.len() {
        return Err(Error::Invariant(format!("parameters {p:?} give non-minimal generators")));
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveredParams {
    pub params: BettiDivisibleParams,
    /// Generator index of each parameter position.
    pub order: Vec<usize>,
}

/// Parameters from `a = c` and `f_i = c_i n_i / (c_1 n_1)`, generators
/// sorted by `c_i n_i`. `None` if they are not valid or do not reproduce
/// the semigroup.
pub fn recover_params(s: &Semigroup) -> Result<Option<RecoveredParams>> {
    s.require_numerical()?;
    let e = s.embedding_dimension();
    if e < 2 {
        return Ok(None);
    }
    let g = s.scalar_gens();
    let c: Vec<u64> =
        constants::c_plain_all(s)?.into_iter().map(|x| x.ok_or_else(|| Error::Invariant("c undefined".into()))).collect::<Result<_>>()?;
    let cn: Vec<u128> = (0..e).map(|i| c[i] as u128 * g[i] as u128).collect();
    let mut order: Vec<usize> = (0..e).collect();
    order.sort_by_key(|&i| (cn[i], i));
    let base = cn[order[0]];
    let mut f = Vec::with_capacity(e);
    for &i in &order {
        if cn[i] % base != 0 {
            return Ok(None);
        }
        f.push(u64::try_from(cn[i] / base).map_err(|_| Error::Overflow)?);
    }
    let params = BettiDivisibleParams { a: order.iter().map(|&i| c[i]).collect(), f };
    if params.validate().is_err() {
        return Ok(None);
    }
    let regen = params.generators()?;
    if order.iter().zip(&regen).any(|(&i, &n)| g[i] != n) {
        return Ok(None);
    }
    Ok(Some(RecoveredParams { params, order }))
}

/// Outcome of checking a gluing of affine semigroups against the Betti
/// prediction `Betti(M) = Betti(M1) ∪ Betti(M2) ∪ {d}`.
#[derive(Debug, Clone, Serialize)]
pub struct AffineGluingCheck {
    pub d_in_both: bool,
    pub predicted: Vec<Element>,
    pub computed: Vec<Element>,
    pub matches: bool,
}

/// `M = <A> + <B>` glued at `d`, where `A` are the generators with the
/// given indices. Betti sets are computed up to `degree_bound`.
pub fn validate_affine_gluing(m: &Semigroup, part_a: &[usize], d: &NatVec, degree_bound: Option<u64>) -> Result<AffineGluingCheck> {
    let e = m.embedding_dimension();
    if part_a.is_empty() || part_a.len() >= e || part_a.iter().any(|&i| i >= e) {
        return Err(Error::InvalidGluing("part A must be a proper non-empty set of generator indices".into()));
    }
    if d.len() != m.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: m.ambient_dim(), got: d.len() });
    }
    let a: Vec<NatVec> = part_a.iter().map(|&i| m.gen(i).clone()).collect();
    let b: Vec<NatVec> = (0..e).filter(|i| !part_a.contains(i)).map(|i| m.gen(i).clone()).collect();
    let allow = crate::semigroup::Options { allow_non_numerical: true, ..Default::default() };
    let m1 = Semigroup::with_options(a, allow)?;
    let m2 = Semigroup::with_options(b, allow)?;
    let d_in_both = !d.is_zero() && m1.contains(d) && m2.contains(d);
    let mut predicted = vec![d.clone()];
    for part in [&m1, &m2] {
        predicted.extend(betti::betti_profile_bounded(part, degree_bound)?.require_complete()?.values());
    }
    predicted.sort();
    predicted.dedup();
    let computed = betti::betti_profile_bounded(m, degree_bound)?.require_complete()?.values();
    let matches = d_in_both && predicted == computed;
    Ok(AffineGluingCheck {
        d_in_both,
        predicted: predicted.into_iter().map(Element).collect(),
        computed: computed.into_iter().map(Element).collect(),
        matches,
    })
}
