//! Characterizations checked on a single semigroup. Every listed condition
//! is evaluated on its own, so an equivalence that fails shows which side
//! disagrees.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::betti::{self, BettiProfile};
use crate::constants;
use crate::construct;
use crate::error::Result;
use crate::factor::{self, Fiber, UnionFind};
use crate::isolated;
use crate::natvec::{format_generators, Factorization, NatVec};
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// All conditions agree.
    Equivalence,
    /// The first condition implies the others.
    Implication,
    /// Every condition holds.
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    pub kind: CheckKind,
    pub conditions: Vec<Condition>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl TheoremCheck {
    fn build(id: &'static str, scope: Option<String>, kind: CheckKind, conds: Vec<(&str, bool)>) -> Self {
        let conditions: Vec<Condition> = conds.into_iter().map(|(n, h)| Condition { name: n.to_string(), holds: h }).collect();
        let consistent = match kind {
            CheckKind::Equivalence => conditions.windows(2).all(|w| w[0].holds == w[1].holds),
            CheckKind::Implication => !conditions[0].holds || conditions[1..].iter().all(|c| c.holds),
            CheckKind::Identity => conditions.iter().all(|c| c.holds),
        };
        TheoremCheck { id, scope, kind, conditions, consistent, detail: None }
    }

    fn with_detail(mut self, d: Option<String>) -> Self {
        self.detail = d;
        self
    }

    /// Whether every condition holds (for equivalences: the common value).
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

fn equiv(id: &'static str, scope: Option<String>, conds: Vec<(&str, bool)>) -> TheoremCheck {
    TheoremCheck::build(id, scope, CheckKind::Equivalence, conds)
}

fn identity(id: &'static str, scope: Option<String>, conds: Vec<(&str, bool)>) -> TheoremCheck {
    TheoremCheck::build(id, scope, CheckKind::Identity, conds)
}

/// The conclusions are evaluated only when the premise holds.
fn implies<'n, F>(id: &'static str, scope: Option<String>, premise: (&'n str, bool), concl: F) -> Result<TheoremCheck>
where
    F: FnOnce() -> Result<Vec<(&'n str, bool)>>,
{
    let mut conds = vec![premise];
    if premise.1 {
        conds.extend(concl()?);
    }
    Ok(TheoremCheck::build(id, scope, CheckKind::Implication, conds))
}

fn same_set(a: &[NatVec], b: &[NatVec]) -> bool {
    let a: BTreeSet<&NatVec> = a.iter().collect();
    let b: BTreeSet<&NatVec> = b.iter().collect();
    a == b
}

struct Ctx<'a> {
    s: &'a Semigroup,
    p: &'a BettiProfile,
    e: usize,
    m: usize,
    betti: Vec<NatVec>,
    ibetti: Vec<NatVec>,
    minimals: Vec<NatVec>,
    single_min: Option<NatVec>,
    ib: BTreeSet<Factorization>,
    ci: bool,
    cm: bool,
    c: Vec<Option<u64>>,
    sorted: bool,
    isolated_sorted: bool,
    divisible: bool,
    isolated_divisible: bool,
}

impl Ctx<'_> {
    fn ce(&self, i: usize) -> Option<NatVec> {
        self.c[i].map(|c| NatVec::unit(self.e, i).scale(c).expect("small"))
    }

    fn cn(&self, i: usize) -> Option<NatVec> {
        self.c[i].and_then(|c| self.s.gen(i).scale(c).ok())
    }

    fn cn_set(&self, idx: &[usize]) -> Option<Vec<NatVec>> {
        idx.iter().map(|&i| self.cn(i)).collect()
    }

    fn isolated_count(&self, f: &Fiber) -> usize {
        f.classes.iter().filter(|c| c.len() == 1).count()
    }

    fn scope_gens(&self, idx: &[usize]) -> String {
        format_generators(&idx.iter().map(|&i| self.s.gen(i).clone()).collect::<Vec<_>>())
    }
}

/// Every characterization applicable to `s`. Needs an exact Betti profile.
pub fn check_equivalence_theorems(s: &Semigroup) -> Result<Vec<TheoremCheck>> {
    let p = betti::betti_profile(s)?;
    p.require_complete()?;
    let flag = |f: Result<super::Flag>| f.map(|f| f.is_true());
    let minimals = isolated::betti_minimals_of(s, &p);
    let x = Ctx {
        s,
        p: &p,
        e: s.embedding_dimension(),
        m: s.codim(),
        betti: p.values(),
        ibetti: p.ibetti().into_iter().map(|f| f.element().clone()).collect(),
        single_min: (minimals.len() == 1).then(|| minimals[0].clone()),
        minimals,
        ib: p.elements.iter().flat_map(Fiber::isolated).collect(),
        ci: p.elements.iter().map(|f| f.nc() - 1).sum::<usize>() == s.codim(),
        cm: s.is_simplicial() && s.is_cohen_macaulay()?,
        c: constants::c_plain_all(s)?,
        sorted: flag(super::is_betti_sorted(s, &p))?,
        isolated_sorted: flag(super::is_betti_isolated_sorted(s, &p))?,
        divisible: flag(super::is_betti_divisible(s, &p))?,
        isolated_divisible: flag(super::is_betti_isolated_divisible(s, &p))?,
    };
    let mut out = Vec::new();
    if !x.betti.is_empty() {
        general(&x, &mut out)?;
    }
    if s.is_simplicial() {
        simplicial(&x, &mut out)?;
        for rays in s.valid_ray_sets()? {
            per_ray_set(&x, &rays, &mut out)?;
        }
    }
    if s.is_numerical() && x.e >= 2 {
        numerical(&x, &mut out)?;
    }
    Ok(out)
}

fn general(x: &Ctx, out: &mut Vec<TheoremCheck>) -> Result<()> {
    let s = x.s;
    let zb: Vec<&Factorization> = x.p.elements.iter().flat_map(|f| f.factorizations.iter()).collect();
    let max_deg = x.betti.iter().map(NatVec::total_degree).max().unwrap_or(0);
    let sample: Vec<NatVec> = if s.is_numerical() {
        let top = max_deg + s.scalar_gens().into_iter().max().unwrap_or(0);
        (0..=top).filter(|&v| s.contains_u64(v)).map(NatVec::scalar).collect()
    } else {
        s.elements_up_to_degree(max_deg + 1)?
    };

    let mut below_bad = None;
    let mut ib_bad = None;
    let mut b_bad = None;
    for m in &sample {
        let f = factor::fiber(s, m)?;
        let iso: HashSet<Factorization> = f.isolated().into_iter().collect();
        for z in &f.factorizations {
            let non_iso = !iso.contains(z);
            let below = zb.iter().any(|y| (*y).lt(z));
            if non_iso != below && below_bad.is_none() {
                below_bad = Some(format!("{z} in Z({m})"));
            }
        }
        let non_iso = iso.len() < f.denumerant();
        let under = |v: &[NatVec]| v.iter().any(|b| b != m && s.le_s(b, m));
        if non_iso != under(&x.ibetti) && ib_bad.is_none() {
            ib_bad = Some(format!("element {m}"));
        }
        if non_iso != under(&x.betti) && b_bad.is_none() {
            b_bad = Some(format!("element {m}"));
        }
    }
    let scope = Some(format!("elements up to degree {}", sample.last().map(NatVec::total_degree).unwrap_or(0)));
    out.push(
        identity(
            "non_isolated_iff_betti_factorization_below",
            scope.clone(),
            vec![("agrees on every sampled factorization", below_bad.is_none())],
        )
        .with_detail(below_bad),
    );
    out.push(
        identity(
            "non_isolated_iff_betti_element_below",
            scope,
            vec![("agrees with IBetti below", ib_bad.is_none()), ("agrees with Betti below", b_bad.is_none())],
        )
        .with_detail(ib_bad.or(b_bad)),
    );

    // minimal factorizations of elements with several factorizations
    let pool_elems: Vec<NatVec> = if s.is_numerical() {
        let top = x.betti.last().unwrap()[0];
        let table = factor::denumerant_table(&s.scalar_gens(), top);
        (1..=top).filter(|&v| table[v as usize] >= 2).map(NatVec::scalar).collect()
    } else {
        let mut v = Vec::new();
        for m in s.elements_up_to_degree(max_deg)? {
            if factor::denumerant_at_most(s, &m, 1)? >= 2 {
                v.push(m);
            }
        }
        v
    };
    let mut pool = Vec::new();
    for m in &pool_elems {
        pool.extend(factor::factorizations(s, m)?);
    }
    let mins: BTreeSet<Factorization> = pool.iter().filter(|z| !pool.iter().any(|y| y.lt(z))).cloned().collect();
    out.push(identity("ib_is_minimal_multi_factorizations", None, vec![("I_b equals the minimal factorizations", mins == x.ib)]));

    let ib_minimals = isolated::s_minimals(s, &x.ibetti);
    let all_isolated: Vec<NatVec> =
        x.p.elements.iter().filter(|f| x.isolated_count(f) == f.nc() && f.nc() >= 2).map(|f| f.element().clone()).collect();
    let multi = if s.is_numerical() { isolated::minimal_multi_elements(s)? } else { isolated::minimal_multi_elements_bounded(s, max_deg)? };
    out.push(identity(
        "betti_minimals_coincide",
        None,
        vec![
            ("minimals of IBetti", same_set(&ib_minimals, &x.minimals)),
            ("Betti elements with every factorization isolated", same_set(&all_isolated, &x.minimals)),
            ("minimal multi-elements", same_set(&multi, &x.minimals)),
        ],
    ));

    let mut disjoint_bad = None;
    for f1 in &x.p.elements {
        for f2 in &x.p.elements {
            if f1.element() == f2.element() || !s.le_s(f1.element(), f2.element()) {
                continue;
            }
            for z in &f1.factorizations {
                for y in f2.isolated() {
                    if z.meets(&y) && disjoint_bad.is_none() {
                        disjoint_bad = Some(format!("{z} meets isolated {y}"));
                    }
                }
            }
        }
    }
    out.push(
        identity("smaller_betti_disjoint_from_isolated", None, vec![("supports are disjoint", disjoint_bad.is_none())])
            .with_detail(disjoint_bad),
    );

    // c multiples and the box below them
    let atoms: Vec<usize> = (0..x.e).filter(|&i| x.c[i].is_some()).collect();
    let ce: BTreeSet<NatVec> = atoms.iter().filter_map(|&i| x.ce(i)).collect();
    let in_box = |z: &NatVec| atoms.iter().all(|&a| z[a] < x.c[a].unwrap());
    out.push(identity("c_multiples_are_isolated", None, vec![("c_a e_a lie in I_b", ce.is_subset(&x.ib))]));
    if s.is_numerical() {
        let is = isolated::is_set(s)?;
        let all: BTreeSet<NatVec> = x.ib.iter().cloned().chain(is.factorizations).collect();
        let rest: Vec<&NatVec> = all.iter().filter(|z| !ce.contains(*z)).collect();
        let inside = rest.iter().all(|z| in_box(z));
        out.push(identity("isolated_rest_in_c_box", None, vec![("I without c_a e_a lies in the c box", inside)]));
        let prod: u128 = atoms.iter().map(|&i| x.c[i].unwrap() as u128).product();
        let ib_eq = x.ib == ce;
        out.push(equiv(
            "ib_c_multiples_iff_box_filled",
            None,
            vec![("I_b = {c_a e_a}", ib_eq), ("I without c_a e_a is the c box", inside && rest.len() as u128 == prod)],
        ));
    } else {
        let inside = x.ib.iter().filter(|z| !ce.contains(*z)).all(in_box);
        out.push(identity("isolated_rest_in_c_box", None, vec![("I_b without c_a e_a lies in the c box", inside)]));
    }
    Ok(())
}

fn simplicial(x: &Ctx, out: &mut Vec<TheoremCheck>) -> Result<()> {
    if x.betti.is_empty() {
        return Ok(());
    }
    let ib = x.ib.len();
    let counts_match =
        x.minimals.iter().any(|b1| x.p.elements.iter().filter(|f| f.element() != b1).all(|f| f.nc() == x.isolated_count(f) + 1));
    out.push(equiv(
        "ci_single_minimal_iff_isolated_count",
        None,
        vec![
            ("complete intersection with one Betti-minimal", x.ci && x.single_min.is_some()),
            ("i_b = m + 1 and nc(b) = i(b) + 1 off one minimal", ib == x.m + 1 && counts_match),
        ],
    ));
    if x.cm && x.m > 0 {
        for rays in x.s.valid_ray_sets()? {
            let d = x.s.apery_rays(&rays)?.len();
            let all_two = x.p.elements.iter().all(|f| f.denumerant() == 2);
            out.push(equiv(
                "ib_maximal_iff_codim_d_minus_one",
                Some(format!("rays {}", x.scope_gens(&rays))),
                vec![
                    ("i_b = d(d - 1)", ib == d * (d - 1)),
                    ("m = d - 1 and every Betti element has two factorizations", x.m + 1 == d && all_two),
                ],
            ));
        }
    }
    Ok(())
}

struct RayInfo {
    rays: Vec<usize>,
    rest: Vec<usize>,
    ap: Vec<NatVec>,
    alpha: Vec<u64>,
    alpha_rect: bool,
    c_rect: bool,
    unique_max_unique_expr: bool,
    unique_max_all_unique: bool,
    /// `I_b ∩ <e_rest> = {c_i e_i : i in rest}`.
    ib_rest_is_c: bool,
    cn_outside: bool,
    prod_c: Option<u128>,
    /// The single Betti-minimal exists and is not in the Apery set.
    b1_outside: bool,
}

fn ray_info(x: &Ctx, rays: &[usize]) -> Result<RayInfo> {
    let s = x.s;
    let ap: Vec<NatVec> = s.apery_rays(rays)?.to_vec();
    let set: HashSet<&NatVec> = ap.iter().collect();
    let rest = super::non_rays(s, rays);
    let alpha: Vec<u64> = rest.iter().map(|&i| constants::alpha_in(&set, s.gen(i))).collect::<Result<_>>()?;
    let (alpha_rect, _) = super::is_alpha_rectangular(s, rays)?;
    let (c_rect, _) = super::is_c_rectangular(s, rays)?;
    let top = s.apery_maximals(&ap);
    let unique = |v: &NatVec| factor::denumerant_at_most(s, v, 1).map(|d| d == 1);
    let unique_max = top.len() == 1;
    let max_unique = unique_max && unique(&top[0])?;
    let mut all_unique = true;
    for v in &ap {
        if !unique(v)? {
            all_unique = false;
            break;
        }
    }
    let ib_rest: BTreeSet<NatVec> = x.ib.iter().filter(|z| rays.iter().all(|&r| z[r] == 0)).cloned().collect();
    let ce_rest: Option<BTreeSet<NatVec>> = rest.iter().map(|&i| x.ce(i)).collect();
    let cn_rest = x.cn_set(&rest);
    Ok(RayInfo {
        rays: rays.to_vec(),
        ib_rest_is_c: ce_rest.is_some_and(|c| c == ib_rest),
        cn_outside: cn_rest.is_some_and(|v| v.iter().all(|b| !set.contains(b))),
        prod_c: rest.iter().map(|&i| x.c[i].map(u128::from)).product(),
        b1_outside: x.single_min.as_ref().is_some_and(|b| !set.contains(b)),
        rest,
        alpha,
        alpha_rect,
        c_rect,
        unique_max_unique_expr: max_unique,
        unique_max_all_unique: unique_max && all_unique,
        ap,
    })
}

fn per_ray_set(x: &Ctx, rays: &[usize], out: &mut Vec<TheoremCheck>) -> Result<()> {
    let s = x.s;
    let r = ray_info(x, rays)?;
    let scope = || Some(format!("rays {}", x.scope_gens(rays)));
    let ap_len = r.ap.len() as u128;
    let prod_alpha: u128 = r.alpha.iter().map(|&a| a as u128 + 1).product();

    out.push(equiv(
        "alpha_rectangular_four_way",
        scope(),
        vec![
            ("alpha-rectangular", r.alpha_rect),
            ("unique maximal with a unique expression", r.unique_max_unique_expr),
            ("unique maximal and unique expressions throughout", r.unique_max_all_unique),
            ("#Ap = prod(alpha + 1)", ap_len == prod_alpha),
        ],
    ));

    out.push(implies("alpha_rectangular_arrangement", scope(), ("alpha-rectangular", r.alpha_rect), || {
        let alpha: BTreeMap<usize, u64> = r.rest.iter().copied().zip(r.alpha.iter().copied()).collect();
        let (found, _) = constants::search_from(s, &[rays.to_vec()], false, |mask, i| {
            let (bar, star) = constants::prefix_constants(s, mask, i)?;
            Ok(star == Some(alpha[&i] + 1) && (!x.cm || bar == star))
        })?;
        Ok(vec![("arrangement with c_star = alpha + 1, free when Cohen-Macaulay", found)])
    })?);

    let c_is_alpha = r.rest.iter().zip(&r.alpha).all(|(&i, &a)| x.c[i] == Some(a + 1));
    out.push(equiv(
        "alpha_rectangular_six_way",
        scope(),
        vec![
            ("alpha-rectangular", r.alpha_rect),
            ("c-rectangular and c_i n_i outside Ap", r.c_rect && r.cn_outside),
            ("c-rectangular and I_b on non-rays is {c_i e_i}", r.c_rect && r.ib_rest_is_c),
            ("I_b on non-rays is {c_i e_i} and unique expressions", r.ib_rest_is_c && r.unique_max_all_unique),
            ("I_b on non-rays is {c_i e_i} and c_i n_i outside Ap", r.ib_rest_is_c && r.cn_outside),
            ("I_b on non-rays is {c_i e_i} and #Ap = prod c", r.ib_rest_is_c && r.prod_c == Some(ap_len)),
        ],
    ));
    out.push(implies("alpha_rectangular_c_is_alpha_plus_one", scope(), ("alpha-rectangular", r.alpha_rect), || {
        Ok(vec![("c_i = alpha_i + 1", c_is_alpha)])
    })?);

    let cn_rest = x.cn_set(&r.rest).unwrap_or_default();
    let betti_is_cn = same_set(&x.betti, &cn_rest);
    let ibetti_is_cn = same_set(&x.ibetti, &cn_rest);
    out.push(implies("cm_alpha_rectangular_betti", scope(), ("Cohen-Macaulay and alpha-rectangular", x.cm && r.alpha_rect), || {
        Ok(vec![("Betti = {c_i n_i}", betti_is_cn), ("IBetti = {c_i n_i}", ibetti_is_cn)])
    })?);

    if x.betti.is_empty() {
        return Ok(());
    }
    let single = x.single_min.is_some();
    let ib_m1 = x.ib.len() == x.m + 1;
    let free_r = if single { super::free_from_rays(s, rays)?.is_some() } else { false };
    let c1 = free_r && single && r.b1_outside;
    let c2 = x.ci && single && r.b1_outside;
    let c3 = ib_m1 && single && r.b1_outside;
    let c4 = ib_m1 && r.alpha_rect;
    out.push(equiv(
        "ci_single_minimal_ray_four_way",
        scope(),
        vec![
            ("free from the rays, one minimal outside Ap", c1),
            ("complete intersection, one minimal outside Ap", c2),
            ("i_b = m + 1, one minimal outside Ap", c3),
            ("i_b = m + 1 and alpha-rectangular", c4),
        ],
    ));
    out.push(implies("ci_single_minimal_ray_consequences", scope(), ("any of the four", c1 || c2 || c3 || c4), || {
        let b1 = &x.betti[0];
        let on_rays = factor::factorizations(s, b1)?.iter().any(|z| z.support().all(|i| rays.contains(&i)));
        Ok(vec![
            ("Cohen-Macaulay", x.cm),
            ("least Betti element factors over the rays", on_rays),
            ("Betti = {c_i n_i}", betti_is_cn),
            ("IBetti = {c_i n_i}", ibetti_is_cn),
        ])
    })?);

    if x.isolated_sorted {
        let b1_out = r.b1_outside;
        out.push(equiv(
            "isolated_sorted_five_way",
            scope(),
            vec![
                ("least Betti element outside Ap", b1_out),
                ("alpha-rectangular", r.alpha_rect),
                ("c-rectangular", r.c_rect),
                ("c_i n_i outside Ap", r.cn_outside),
                ("#Ap = prod c", r.prod_c == Some(ap_len)),
            ],
        ));
    }

    let form_c = any_order_form(x, rays, &r.rest, Shape::Sorted, Coef::C)?;
    let form_a = any_order_form(x, rays, &r.rest, Shape::Sorted, Coef::Free)?;
    let s1 = x.sorted && x.cm && r.b1_outside;
    let s2 = x.isolated_sorted && x.cm && r.b1_outside;
    out.push(equiv(
        "sorted_presentation_four_way",
        scope(),
        vec![
            ("Betti sorted, Cohen-Macaulay, least Betti outside Ap", s1),
            ("Betti isolated sorted, Cohen-Macaulay, least Betti outside Ap", s2),
            ("sorted presentation with c", form_c),
            ("sorted presentation with free coefficients", form_a),
        ],
    ));
    out.push(implies("sorted_presentation_betti", scope(), ("any of the four", s1 || s2 || form_c || form_a), || {
        Ok(vec![("IBetti = Betti = {c_i n_i}", betti_is_cn && ibetti_is_cn)])
    })?);

    out.push(implies(
        "isolated_divisible_ib_shape",
        scope(),
        ("Betti isolated divisible, least Betti outside Ap", x.isolated_divisible && r.b1_outside),
        || {
            let ce: Option<BTreeSet<NatVec>> = r.rest.iter().map(|&i| x.ce(i)).collect();
            let b1 = x.single_min.clone().unwrap_or_default();
            let shape = ce.is_some_and(|ce| {
                let extra: Vec<&NatVec> = x.ib.iter().filter(|z| !ce.contains(*z)).collect();
                ce.is_subset(&x.ib)
                    && extra.len() == 1
                    && extra[0].support().all(|i| r.rays.contains(&i))
                    && s.evaluate(extra[0]).is_ok_and(|v| v == b1)
            });
            Ok(vec![("Cohen-Macaulay", x.cm), ("I_b = {x} ∪ {c_i e_i} with x over the rays in Z(b1)", shape)])
        },
    )?);
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Sorted,
    Divisible,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Coef {
    C,
    Free,
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &h) in v.iter().enumerate() {
        let mut rest = v.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, h);
            out.push(p);
        }
    }
    out
}

/// Permutations above this size are not searched.
const MAX_PERMUTED: usize = 6;

fn any_order_form(x: &Ctx, rays: &[usize], rest: &[usize], shape: Shape, coef: Coef) -> Result<bool> {
    // such a presentation has e - r relations and is minimal
    if !x.ci || rest.is_empty() || rest.len() > MAX_PERMUTED {
        return Ok(false);
    }
    for order in permutations(rest) {
        if form_exists(x, rays, &order, shape, coef)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A minimal presentation made of one relation per non-ray generator, in
/// the given order, of the requested shape.
fn form_exists(x: &Ctx, rays: &[usize], rest: &[usize], shape: Shape, coef: Coef) -> Result<bool> {
    if !x.ci {
        return Ok(false);
    }
    let mut choices: Vec<Vec<u64>> = Vec::with_capacity(rest.len());
    for &i in rest {
        let n = x.s.gen(i);
        let ks: Vec<u64> = match coef {
            Coef::C => x.c[i].into_iter().collect(),
            Coef::Free => x.betti.iter().filter_map(|b| b.multiple_of(n)).collect(),
        };
        if ks.is_empty() {
            return Ok(false);
        }
        choices.push(ks);
    }
    let mut ks = Vec::with_capacity(rest.len());
    pick(x, rays, rest, shape, coef, &choices, &mut ks)
}

fn pick(x: &Ctx, rays: &[usize], rest: &[usize], shape: Shape, coef: Coef, choices: &[Vec<u64>], ks: &mut Vec<u64>) -> Result<bool> {
    if ks.len() == rest.len() {
        return slots_span(x, rays, rest, shape, coef, ks);
    }
    for &k in &choices[ks.len()] {
        ks.push(k);
        if pick(x, rays, rest, shape, coef, choices, ks)? {
            return Ok(true);
        }
        ks.pop();
    }
    Ok(false)
}

fn slots_span(x: &Ctx, rays: &[usize], rest: &[usize], shape: Shape, coef: Coef, ks: &[u64]) -> Result<bool> {
    let numerical = x.s.is_numerical();
    let mut slots: BTreeMap<&NatVec, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    let mut fibers: BTreeMap<&NatVec, &Fiber> = BTreeMap::new();
    for (pos, &i) in rest.iter().enumerate() {
        let b = x.s.gen(i).scale(ks[pos])?;
        let Some(f) = x.p.get(&b) else { return Ok(false) };
        let left = NatVec::unit(x.e, i).scale(ks[pos])?;
        let Some(lc) = f.class_of(&left) else { return Ok(false) };
        let allowed = |j: usize| rays.contains(&j) || rest[..pos].contains(&j);
        let mut opts = BTreeSet::new();
        for y in &f.factorizations {
            if !y.support().all(allowed) {
                continue;
            }
            let ok = match (shape, pos) {
                (Shape::Sorted, 0) => !(numerical && coef == Coef::C) || y[rays[0]] >= x.c[rays[0]].unwrap_or(0),
                (Shape::Sorted, _) => y[rest[pos - 1]] >= ks[pos - 1],
                (Shape::Divisible, 0) => {
                    !numerical || (y.support().count() == 1 && (coef == Coef::Free || y[rays[0]] % x.c[rays[0]].unwrap_or(1) == 0))
                }
                (Shape::Divisible, _) => {
                    let j = rest[pos - 1];
                    y.support().all(|t| t == j) && y[j] > 0 && y[j] % ks[pos - 1] == 0
                }
            };
            if ok {
                if let Some(c) = f.class_of(y) {
                    if c != lc {
                        opts.insert(c);
                    }
                }
            }
        }
        if opts.is_empty() {
            return Ok(false);
        }
        let key = f.element();
        fibers.insert(key, f);
        slots.entry(key).or_default().push((lc, opts.into_iter().collect()));
    }
    if slots.len() != x.p.len() {
        return Ok(false);
    }
    for (b, group) in &slots {
        let nc = fibers[b].nc();
        if group.len() + 1 != nc || !spanning_choice(group, 0, &mut UnionFind::new(nc)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Picks one right class per slot so that the edges form a spanning tree.
fn spanning_choice(group: &[(usize, Vec<usize>)], k: usize, uf: &mut UnionFind) -> bool {
    if k == group.len() {
        return true;
    }
    let (l, opts) = &group[k];
    for &o in opts {
        let mut next = uf.clone();
        if next.union(*l, o) && spanning_choice(group, k + 1, &mut next) {
            return true;
        }
    }
    false
}

/// Orders of the generators sorted by `c_i n_i`, permuting within ties.
fn sorted_orders(x: &Ctx, cap: usize) -> Vec<Vec<usize>> {
    let key = |i: usize| x.c[i].unwrap_or(0) as u128 * x.s.gen(i)[0] as u128;
    let mut idx: Vec<usize> = (0..x.e).collect();
    idx.sort_by_key(|&i| (key(i), i));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match groups.last_mut() {
            Some(g) if key(g[0]) == key(i) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut orders = vec![Vec::new()];
    for g in groups {
        let perms = if g.len() <= MAX_PERMUTED { permutations(&g) } else { vec![g.clone()] };
        let mut next = Vec::new();
        'outer: for o in &orders {
            for p in &perms {
                let mut v: Vec<usize> = o.clone();
                v.extend(p);
                next.push(v);
                if next.len() >= cap {
                    break 'outer;
                }
            }
        }
        orders = next;
    }
    orders
}

fn numerical(x: &Ctx, out: &mut Vec<TheoremCheck>) -> Result<()> {
    let s = x.s;
    let g = s.scalar_gens();
    let e = x.e;
    let b1 = x.betti[0][0];
    let c: Vec<u64> = x.c.iter().map(|c| c.unwrap_or(0)).collect();
    let table_top = *s.apery_numerical(b1).iter().max().unwrap();
    let table = factor::denumerant_table(&g, table_top);
    let unique: Vec<NatVec> = (0..=table_top).filter(|&v| table[v as usize] == 1).map(NatVec::scalar).collect();
    out.push(identity(
        "unique_factorization_is_apery_intersection",
        None,
        vec![
            ("over Betti", same_set(&s.apery(&x.betti)?, &unique)),
            ("over IBetti", same_set(&s.apery(&x.ibetti)?, &unique)),
            ("over Betti-minimals", same_set(&s.apery(&x.minimals)?, &unique)),
        ],
    ));
    let is = isolated::is_set(s)?;
    let i_s = is.len();
    let i_b = x.ib.len();
    out.push(equiv(
        "single_minimal_apery",
        None,
        vec![
            ("one Betti-minimal", x.single_min.is_some()),
            ("Ap(S; b1) is the unique factorization set", same_set(&s.apery(&[x.betti[0].clone()])?, &unique)),
            ("i_s = b1", i_s as u64 == b1),
        ],
    ));
    let least_multi = (0..=table_top.max(b1)).find(|&v| factor::denumerant_table(&g, v)[v as usize] >= 2);
    out.push(identity(
        "least_betti_is_least_multi",
        None,
        vec![
            ("least element with two factorizations", least_multi == Some(b1)),
            ("all its factorizations isolated", x.isolated_count(&x.p.elements[0]) == x.p.elements[0].nc()),
        ],
    ));
    let i = i_s + i_b;
    out.push(equiv(
        "single_betti_iff_isolated_count",
        None,
        vec![("one Betti element", x.betti.len() == 1), ("i = b1 + sum nc", i as u64 == b1 + x.p.nc_sum() as u64)],
    ));
    let prod_c: u128 = c.iter().map(|&v| v as u128).product();
    out.push(equiv(
        "isolated_count_prod_c",
        None,
        vec![("i = e + prod c", i as u128 == e as u128 + prod_c), ("i_b = e", i_b == e), ("i_s = prod c", i_s as u128 == prod_c)],
    ));

    let splits = construct::splits(s)?;
    let single = x.single_min.is_some();
    let cn: Vec<u128> = (0..e).map(|i| c[i] as u128 * g[i] as u128).collect();
    let min_cn = *cn.iter().min().unwrap();
    let free_some = super::free_some_arrangement(s)?.is_some();
    for i in (0..e).filter(|&i| cn[i] == min_cn) {
        let scope = Some(format!("n_1 = {}", g[i]));
        let a_rect = super::is_alpha_rectangular(s, &[i])?.0;
        let conds = vec![
            ("free and one Betti-minimal", free_some && single),
            ("complete intersection and one Betti-minimal", x.ci && single),
            ("i_b = e and one Betti-minimal", i_b == e && single),
            ("i_b = e and alpha-rectangular for n_1", i_b == e && a_rect),
        ];
        let any = conds.iter().any(|c| c.1);
        out.push(equiv("ci_single_minimal_sorted_four_way", scope.clone(), conds));
        let others: Vec<usize> = (0..e).filter(|&j| j != i).collect();
        let cn_others = x.cn_set(&others).unwrap_or_default();
        out.push(implies("ci_single_minimal_sorted_consequences", scope.clone(), ("any of the four", any), || {
            let prod: u128 = others.iter().map(|&j| c[j] as u128).product();
            Ok(vec![
                ("Betti = IBetti = {c_j n_j : j != 1}", same_set(&x.betti, &cn_others) && same_set(&x.ibetti, &cn_others)),
                ("n_1 = prod_{j != 1} c_j", g[i] as u128 == prod),
            ])
        })?);
        out.push(implies("isolated_sorted_free_from_least", scope, ("Betti isolated sorted", x.isolated_sorted), || {
            Ok(vec![("alpha-rectangular for n_1", a_rect), ("free from n_1", super::free_from_rays(s, &[i])?.is_some())])
        })?);
    }

    let orders = sorted_orders(x, 24);
    let mut form = [false; 4];
    for o in &orders {
        let (rays, rest) = (&o[..1], &o[1..]);
        let shapes = [(Shape::Sorted, Coef::C), (Shape::Sorted, Coef::Free), (Shape::Divisible, Coef::C), (Shape::Divisible, Coef::Free)];
        for (k, (sh, co)) in shapes.into_iter().enumerate() {
            if !form[k] {
                form[k] = form_exists(x, rays, rest, sh, co)?;
            }
        }
    }
    let sorted_betti = |o: &[usize]| x.cn_set(&o[1..]).is_some_and(|v| same_set(&v, &x.betti) && same_set(&v, &x.ibetti));
    out.push(equiv(
        "sorted_presentation_numerical",
        None,
        vec![
            ("Betti sorted", x.sorted),
            ("Betti isolated sorted", x.isolated_sorted),
            ("sorted presentation with c", form[0]),
            ("sorted presentation with free coefficients", form[1]),
        ],
    ));
    out.push(implies("sorted_betti_is_c_multiples", None, ("Betti sorted", x.sorted), || {
        Ok(vec![("IBetti = Betti = {c_j n_j : j >= 2}", orders.iter().any(|o| sorted_betti(o)))])
    })?);
    out.push(equiv(
        "divisible_presentation_numerical",
        None,
        vec![
            ("Betti divisible", x.divisible),
            ("Betti isolated divisible", x.isolated_divisible),
            ("divisible presentation with c", form[2]),
            ("divisible presentation with free coefficients", form[3]),
        ],
    ));

    for i in 0..e {
        let a_rect = super::is_alpha_rectangular(s, &[i])?.0;
        let mut glued = false;
        for sp in splits.iter().flatten() {
            if sp.j == i {
                continue;
            }
            let ii = if i < sp.j { i } else { i - 1 };
            let ni = g[i] / sp.d;
            let nj = g[sp.j];
            if super::is_alpha_rectangular(&sp.inner, &[ii])?.0 && nj >= ni && sp.inner.contains_u64(nj - ni) {
                glued = true;
                break;
            }
        }
        out.push(equiv(
            "alpha_rectangular_iff_gluing",
            Some(format!("n = {}", g[i])),
            vec![("alpha-rectangular", a_rect), ("gluing with alpha-rectangular part", glued)],
        ));
    }

    let mut ci_glue = false;
    let mut sorted_glue = false;
    let mut div_glue = false;
    for sp in splits.iter().flatten() {
        let inner = &sp.inner;
        let n = NatVec::scalar(g[sp.j]);
        if inner.embedding_dimension() == 1 {
            (ci_glue, sorted_glue, div_glue) = (true, true, true);
            break;
        }
        let q = betti::betti_profile(inner)?;
        let mins = isolated::betti_minimals_of(inner, &q);
        let ci = q.elements.iter().map(|f| f.nc() - 1).sum::<usize>() == inner.codim();
        let (least, top) = (&q.elements[0].element.0, &q.elements.last().unwrap().element.0);
        ci_glue |= ci && mins.len() == 1 && inner.le_s(least, &n);
        sorted_glue |= super::is_betti_sorted(inner, &q)?.is_true() && inner.le_s(top, &n);
        div_glue |= super::is_betti_divisible(inner, &q)?.is_true() && n.multiple_of(top).is_some();
    }
    out.push(equiv(
        "ci_single_minimal_iff_gluing",
        None,
        vec![("complete intersection and one Betti-minimal", x.ci && single), ("gluing with such a part", ci_glue)],
    ));
    out.push(equiv("sorted_iff_gluing", None, vec![("Betti sorted", x.sorted), ("gluing with a sorted part", sorted_glue)]));
    out.push(equiv("divisible_iff_gluing", None, vec![("Betti divisible", x.divisible), ("gluing with a divisible part", div_glue)]));

    let rec = construct::recover_params(s)?;
    out.push(equiv("divisible_iff_params", None, vec![("Betti divisible", x.divisible), ("parameters recovered", rec.is_some())]));
    out.push(implies("divisible_params_betti", None, ("Betti divisible", x.divisible), || {
        let ok = match &rec {
            Some(r) => r.params.predicted_betti()?.into_iter().map(NatVec::scalar).collect::<Vec<_>>() == x.betti,
            None => false,
        };
        Ok(vec![("Betti = {f_i prod c}", ok)])
    })?);

    let single_betti = x.betti.len() == 1;
    let prod = g.iter().fold(BigUint::from(1u32), |a, &n| a * n);
    let root = prod.nth_root((e - 1) as u32);
    let a: Option<Vec<u64>> = if root.pow((e - 1) as u32) == prod {
        g.iter()
            .map(|&n| {
                let (q, r) = root.div_rem(&BigUint::from(n));
                (r == BigUint::from(0u32)).then(|| u64::try_from(q).ok()).flatten()
            })
            .collect()
    } else {
        None
    };
    let coprime = a.as_ref().is_some_and(|a| (0..e).all(|i| (i + 1..e).all(|j| a[i].gcd(&a[j]) == 1)));
    out.push(equiv(
        "single_betti_iff_root",
        None,
        vec![("one Betti element", single_betti), ("root of prod n gives pairwise coprime a", coprime)],
    ));
    out.push(implies("single_betti_root_values", None, ("one Betti element", single_betti), || {
        let a_is_c = a.as_ref().is_some_and(|a| *a == c);
        Ok(vec![("a = c", a_is_c), ("Betti = {prod c}", x.betti == vec![NatVec::scalar(prod_c.min(u64::MAX as u128) as u64)])])
    })?);

    let mut partitions_ok = true;
    let mut failing = None;
    for mask in 0u64..(1 << (e - 1)) {
        let part_a: Vec<usize> = std::iter::once(0).chain((1..e).filter(|&k| mask >> (k - 1) & 1 == 1)).collect();
        if part_a.len() == e {
            continue;
        }
        let ok = match construct::partition_gluing(s, &part_a)? {
            Ok(pg) => part_divisible(&pg.left)? && part_divisible(&pg.right)?,
            Err(_) => false,
        };
        if !ok {
            partitions_ok = false;
            failing = Some(format!("part {}", x.scope_gens(&part_a)));
            break;
        }
    }
    let free_all = super::is_free_all_arrangements(s)?.0;
    out.push(
        equiv(
            "divisible_iff_all_partitions",
            None,
            vec![
                ("Betti divisible", x.divisible),
                ("every partition is a divisible gluing", partitions_ok),
                ("free for every arrangement", free_all),
            ],
        )
        .with_detail(failing),
    );

    let mut c_rect_all = true;
    for i in 0..e {
        c_rect_all &= super::is_c_rectangular(s, &[i])?.0;
    }
    out.push(equiv(
        "single_betti_every_generator",
        None,
        vec![
            ("one Betti element", single_betti),
            ("c-rectangular for every generator and i_b = e", c_rect_all && i_b == e),
            ("alpha-rectangular for every generator", super::is_alpha_rectangular_every_generator(s)?.0),
        ],
    ));

    Ok(())
}

fn part_divisible(s: &Semigroup) -> Result<bool> {
    if s.embedding_dimension() == 1 {
        return Ok(true);
    }
    let p = betti::betti_profile(s)?;
    Ok(super::is_betti_divisible(s, &p)?.is_true())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(g: &[u64]) -> Vec<TheoremCheck> {
        check_equivalence_theorems(&Semigroup::numerical(g).unwrap()).unwrap()
    }

    #[test]
    fn examples_are_consistent() {
        for g in
            [&[3u64, 4, 5][..], &[4, 6, 9], &[16, 20, 30, 45], &[24, 26, 36, 39], &[2, 3], &[30, 42, 105, 140], &[6, 10, 15], &[5, 7, 9]]
        {
            for c in run(g) {
                assert!(c.consistent, "{g:?}: {c:?}");
            }
        }
    }

    #[test]
    fn affine_examples_are_consistent() {
        for text in ["(1,0);(0,2);(0,3)", "(2,0);(0,2);(1,1)", "(3,0);(0,3);(1,2)"] {
            let s = Semigroup::parse(text).unwrap();
            for c in check_equivalence_theorems(&s).unwrap() {
                assert!(c.consistent, "{text}: {c:?}");
            }
        }
    }

    #[test]
    fn divisible_example_holds_everywhere() {
        let v = run(&[30, 42, 105, 140]);
        let get = |id: &str| v.iter().find(|c| c.id == id).unwrap();
        assert!(get("divisible_iff_params").all_hold());
        assert!(get("divisible_iff_all_partitions").all_hold());
        assert!(get("divisible_presentation_numerical").all_hold());
        assert!(!get("single_betti_iff_root").conditions[0].holds);
    }

    #[test]
    fn sorted_not_divisible() {
        let v = run(&[4, 6, 9]);
        let get = |id: &str| v.iter().find(|c| c.id == id).unwrap();
        assert!(get("sorted_presentation_numerical").all_hold());
        assert!(!get("divisible_presentation_numerical").conditions[0].holds);
        assert!(get("sorted_iff_gluing").all_hold());
    }
}
