//! Numeric inequalities on isolated factorization counts.

use serde::{Serialize, Serializer};

use crate::betti;
use crate::constants;
use crate::error::Result;
use crate::isolated;
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Pass,
    Fail,
    Skipped,
}

/// One inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub id: &'static str,
    pub relation: &'static str,
    #[serde(serialize_with = "safe_i128")]
    pub lhs: i128,
    #[serde(serialize_with = "safe_i128")]
    pub rhs: i128,
    pub status: BoundStatus,
    /// Equality holds.
    pub tight: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn safe_i128<S: Serializer>(x: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    const SAFE: i128 = 1 << 53;
    if x.abs() > SAFE {
        s.serialize_str(&x.to_string())
    } else {
        s.serialize_i64(*x as i64)
    }
}

fn le(id: &'static str, relation: &'static str, lhs: i128, rhs: i128) -> BoundCheck {
    let status = if lhs <= rhs { BoundStatus::Pass } else { BoundStatus::Fail };
    BoundCheck { id, relation, lhs, rhs, status, tight: lhs == rhs, note: None }
}

fn skipped(id: &'static str, relation: &'static str, why: &str) -> BoundCheck {
    BoundCheck { id, relation, lhs: 0, rhs: 0, status: BoundStatus::Skipped, tight: false, note: Some(why.to_string()) }
}

/// Every applicable bound. Needs an exact Betti profile.
pub fn verify_bounds(s: &Semigroup) -> Result<Vec<BoundCheck>> {
    let p = betti::betti_profile(s)?;
    p.require_complete()?;
    let ip = isolated::isolated_profile(s, &p)?;
    let i_b = ip.i_b as i128;
    let nc_sum = p.nc_sum() as i128;
    let m = s.codim() as i128;
    let e = s.embedding_dimension() as i128;
    let mut out = Vec::new();

    const IB_CODIM: &str = "m + 1 <= i_b";
    if !s.is_simplicial() {
        out.push(skipped("ib_codim_lower", IB_CODIM, "not simplicial"));
    } else if m == 0 {
        out.push(skipped("ib_codim_lower", IB_CODIM, "codimension zero"));
    } else {
        out.push(le("ib_codim_lower", IB_CODIM, m + 1, i_b));
    }

    let cm = s.is_simplicial() && s.is_cohen_macaulay()?;
    if cm && m > 0 {
        let mut d = usize::MAX;
        for rays in s.valid_ray_sets()? {
            d = d.min(s.apery_rays(&rays)?.len());
        }
        let d = d as i128;
        let mid = (2 * d - m) * (m - 1) + 2;
        out.push(le("cm_ib_le_nc_sum", "i_b <= sum nc", i_b, nc_sum));
        out.push(le("cm_nc_sum_le_codim_bound", "sum nc <= (2d - m)(m - 1) + 2", nc_sum, mid));
        out.push(le("cm_codim_bound_le_square", "(2d - m)(m - 1) + 2 <= d(d - 1)", mid, d * (d - 1)));
    } else {
        let why = if cm { "codimension zero" } else { "not Cohen-Macaulay" };
        out.push(skipped("cm_ib_le_nc_sum", "i_b <= sum nc", why));
        out.push(skipped("cm_nc_sum_le_codim_bound", "sum nc <= (2d - m)(m - 1) + 2", why));
        out.push(skipped("cm_codim_bound_le_square", "(2d - m)(m - 1) + 2 <= d(d - 1)", why));
    }

    let numerical_rows: [(&str, &str); 8] = [
        ("is_lower_e", "e + 3 <= sum c - e + 2"),
        ("is_lower_c", "sum c - e + 2 <= i_s"),
        ("is_upper_min_betti", "i_s <= min Betti"),
        ("i_upper_prod_c", "i <= e + prod c"),
        ("is_upper_prod_c", "i_s <= prod c"),
        ("i_lower_e", "2e + 3 <= i"),
        ("i_upper_nc", "i <= min Betti + sum nc"),
        ("nc_upper_multiplicity", "min Betti + sum nc <= min Betti + m(m - 1)"),
    ];
    if !s.is_numerical() || p.is_empty() {
        let why = if s.is_numerical() { "no Betti elements" } else { "numerical semigroups only" };
        out.extend(numerical_rows.iter().map(|(id, rel)| skipped(id, rel, why)));
        return Ok(out);
    }
    let c: Vec<i128> = constants::c_plain_all(s)?.into_iter().map(|c| c.unwrap_or(0) as i128).collect();
    let sum_c: i128 = c.iter().sum();
    let prod_c: i128 = c.iter().try_fold(1i128, |a, &x| a.checked_mul(x)).unwrap_or(i128::MAX);
    let i_s = ip.i_s.unwrap_or(0) as i128;
    let i = i_s + i_b;
    let min_betti = p.elements[0].element()[0] as i128;
    let mult = s.multiplicity()? as i128;
    let v = [
        (e + 3, sum_c - e + 2),
        (sum_c - e + 2, i_s),
        (i_s, min_betti),
        (i, e.saturating_add(prod_c)),
        (i_s, prod_c),
        (2 * e + 3, i),
        (i, min_betti + nc_sum),
        (min_betti + nc_sum, min_betti + mult * (mult - 1)),
    ];
    for ((id, rel), (l, r)) in numerical_rows.iter().zip(v) {
        out.push(le(id, rel, l, r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_hold_on_examples() {
        for g in [&[3u64, 4, 5][..], &[4, 6, 9], &[16, 20, 30, 45], &[24, 26, 36, 39], &[2, 3], &[5, 7, 9, 11]] {
            let s = Semigroup::numerical(g).unwrap();
            let v = verify_bounds(&s).unwrap();
            assert!(v.iter().all(|b| b.status != BoundStatus::Fail), "{g:?}: {v:?}");
        }
    }

    #[test]
    fn tight_cases() {
        // i = e + prod c exactly when i_b = e
        let s = Semigroup::numerical(&[6, 10, 15]).unwrap();
        let v = verify_bounds(&s).unwrap();
        assert!(v.iter().find(|b| b.id == "i_upper_prod_c").unwrap().tight);
        let a = Semigroup::parse("(1,0);(0,2);(0,3)").unwrap();
        let v = verify_bounds(&a).unwrap();
        let b = v.iter().find(|b| b.id == "ib_codim_lower").unwrap();
        assert_eq!((b.lhs, b.rhs, b.status), (2, 2, BoundStatus::Pass));
    }
}
