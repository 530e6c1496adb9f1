//! Exact integer and rational linear algebra on small generator systems.
//!
//! All arithmetic is arbitrary precision, so nothing here can overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::natvec::NatVec;

/// Dense integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl IntMatrix {
    /// One row per generator.
    pub fn from_rows(gens: &[NatVec]) -> Result<Self> {
        let cols = check_dims(gens, None)?;
        let rows = gens.iter().map(|g| g.coords().iter().map(|&x| BigInt::from(x)).collect()).collect();
        Ok(IntMatrix { rows, cols })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }
}

fn check_dims(gens: &[NatVec], want: Option<usize>) -> Result<usize> {
    let dim = match want.or_else(|| gens.first().map(NatVec::len)) {
        Some(d) => d,
        None => return Ok(0),
    };
    for g in gens {
        if g.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
        }
    }
    Ok(dim)
}

/// Row echelon basis of the subgroup of `Z^n` spanned by a set of vectors.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    dim: usize,
}

impl LatticeBasis {
    pub fn new(gens: &[NatVec]) -> Result<Self> {
        let m = IntMatrix::from_rows(gens)?;
        Ok(Self::from_matrix(m))
    }

    pub fn from_matrix(m: IntMatrix) -> Self {
        let dim = m.cols;
        let mut rows = m.rows;
        let mut top = 0;
        let mut pivots = Vec::new();
        for col in 0..dim {
            loop {
                let pick =
                    (top..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(p) = pick else { break };
                rows.swap(top, p);
                let mut clean = true;
                for i in top + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[top][col]);
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[top]) {
                        *x -= &q * y;
                    }
                    if !rows[i][col].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    if rows[top][col].is_negative() {
                        for x in rows[top].iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    pivots.push(col);
                    top += 1;
                    break;
                }
            }
        }
        rows.truncate(top);
        LatticeBasis { rows, pivots, dim }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let (q, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        Ok(w.iter().all(Zero::is_zero))
    }
}

/// Rank of the subgroup of `Z^n` spanned by `gens`.
pub fn group_rank(gens: &[NatVec]) -> Result<usize> {
    Ok(LatticeBasis::new(gens)?.rank())
}

/// Whether `v` lies in the subgroup of `Z^n` spanned by `gens`.
pub fn in_group(v: &[i64], gens: &[NatVec]) -> Result<bool> {
    check_dims(gens, Some(v.len()))?;
    if gens.is_empty() {
        return Ok(v.iter().all(|&x| x == 0));
    }
    LatticeBasis::new(gens)?.contains(v)
}

pub fn is_independent(gens: &[NatVec]) -> Result<bool> {
    Ok(group_rank(gens)? == gens.len())
}

/// Unique rational coordinates of `v` in the span of the independent
/// vectors `gens`, or `None` if `v` is outside their span.
pub fn rational_coordinates(v: &[i64], gens: &[NatVec]) -> Result<Option<Vec<BigRational>>> {
    let n = v.len();
    check_dims(gens, Some(n))?;
    let k = gens.len();
    // augmented system: one equation per coordinate
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = gens.iter().map(|g| BigRational::from_integer(BigInt::from(g[row]))).collect();
            r.push(BigRational::from_integer(BigInt::from(v[row])));
            r
        })
        .collect();
    let mut top = 0;
    for col in 0..k {
        let Some(p) = (top..n).find(|&i| !a[i][col].is_zero()) else {
            return Err(Error::DependentGenerators);
        };
        a.swap(top, p);
        let inv = a[top][col].recip();
        for x in a[top].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != top && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let (lo, hi) = if i < top {
                    let (l, h) = a.split_at_mut(top);
                    (&mut l[i], &h[0])
                } else {
                    let (l, h) = a.split_at_mut(i);
                    (&mut h[0], &l[top])
                };
                for (x, y) in lo.iter_mut().zip(hi.iter()) {
                    *x -= &f * y;
                }
            }
        }
        top += 1;
    }
    if a[top..].iter().any(|r| !r[k].is_zero()) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|i| a[i][k].clone()).collect()))
}

/// Whether `v` lies in the rational cone spanned by the independent `rays`.
pub fn in_rational_cone(v: &NatVec, rays: &[NatVec]) -> Result<bool> {
    Ok(rational_coordinates(&v.to_i64()?, rays)?.is_some_and(|c| c.iter().all(|x| !x.is_negative())))
}

/// Integer coordinates of `v` with respect to independent `gens`, if any.
pub fn solve_in_lattice_of_independent_gens(v: &[i64], gens: &[NatVec]) -> Result<Option<Vec<BigInt>>> {
    Ok(rational_coordinates(v, gens)?
        .and_then(|c| c.iter().all(BigRational::is_integer).then(|| c.into_iter().map(|x| x.to_integer()).collect())))
}

/// Non-negative rational coefficients expressing `v` over arbitrary
/// (possibly dependent) `gens`, if `v` is in their cone. Searches
/// independent subsets, which suffices by Caratheodory's theorem.
pub fn cone_certificate(v: &NatVec, gens: &[NatVec]) -> Result<Option<Vec<BigRational>>> {
    check_dims(gens, Some(v.len()))?;
    if v.is_zero() {
        return Ok(Some(vec![BigRational::zero(); gens.len()]));
    }
    let vi = v.to_i64()?;
    let k = gens.len();
    let max = group_rank(gens)?.min(k);
    for size in 1..=max {
        for subset in Combinations::new(k, size) {
            let sub: Vec<NatVec> = subset.iter().map(|&i| gens[i].clone()).collect();
            if !is_independent(&sub)? {
                continue;
            }
            if let Some(c) = rational_coordinates(&vi, &sub)? {
                if c.iter().all(|x| !x.is_negative()) {
                    let mut full = vec![BigRational::zero(); k];
                    for (&i, x) in subset.iter().zip(c) {
                        full[i] = x;
                    }
                    return Ok(Some(full));
                }
            }
        }
    }
    Ok(None)
}

/// Least common multiple of the denominators, as `u64`.
pub fn common_denominator(coeffs: &[BigRational]) -> Result<u64> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    u64::try_from(l).map_err(|_| Error::Overflow)
}

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(rows: &[&[u64]]) -> Vec<NatVec> {
        rows.iter().map(|r| NatVec::new(r.to_vec())).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(group_rank(&v(&[&[1, 0], &[0, 2], &[0, 3]])).unwrap(), 2);
        assert_eq!(group_rank(&v(&[&[2, 4]])).unwrap(), 1);
    }

    #[test]
    fn group_membership() {
        let g = v(&[&[0, 2], &[0, 3]]);
        assert!(in_group(&[0, 1], &g).unwrap());
        assert!(!in_group(&[1, 1], &g).unwrap());
        assert!(in_group(&[210], &v(&[&[30], &[42]])).unwrap());
        assert!(!in_group(&[3], &v(&[&[30], &[42]])).unwrap());
    }

    #[test]
    fn cones() {
        let p = |x: &[u64]| NatVec::new(x.to_vec());
        assert!(in_rational_cone(&p(&[0, 5]), &v(&[&[1, 0], &[0, 2]])).unwrap());
        assert!(!in_rational_cone(&p(&[1, 0]), &v(&[&[0, 2]])).unwrap());
        assert!(in_rational_cone(&p(&[3, 3]), &v(&[&[1, 0], &[1, 1]])).unwrap());
        assert_eq!(in_rational_cone(&p(&[1, 1]), &v(&[&[1, 0], &[2, 0]])), Err(Error::DependentGenerators));
    }

    #[test]
    fn lattice_solutions() {
        let g = v(&[&[1, 0], &[0, 2]]);
        let s = solve_in_lattice_of_independent_gens(&[0, 6], &g).unwrap().unwrap();
        assert_eq!(s, vec![BigInt::from(0), BigInt::from(3)]);
        assert!(solve_in_lattice_of_independent_gens(&[0, 5], &g).unwrap().is_none());
        let s = solve_in_lattice_of_independent_gens(&[2, -4], &g).unwrap().unwrap();
        assert_eq!(s, vec![BigInt::from(2), BigInt::from(-2)]);
    }

    #[test]
    fn caratheodory() {
        let g = v(&[&[1, 0, 1], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        for i in 0..4 {
            let others: Vec<NatVec> = g.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            assert!(cone_certificate(&g[i], &others).unwrap().is_none());
        }
        let c = cone_certificate(&NatVec::new(vec![1, 1, 1]), &g).unwrap().unwrap();
        assert!(c.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }
}
