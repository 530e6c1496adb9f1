use std::fmt;
use std::ops::Index;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A vector of non-negative integers. Semigroup elements and factorizations
/// both use this type; numerical elements are vectors of length one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NatVec(Vec<u64>);

/// Exponent vector over the minimal generators, in generator order.
pub type Factorization = NatVec;

impl NatVec {
    pub fn new(coords: Vec<u64>) -> Self {
        NatVec(coords)
    }

    pub fn scalar(x: u64) -> Self {
        NatVec(vec![x])
    }

    pub fn zeros(len: usize) -> Self {
        NatVec(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        NatVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    /// The single coordinate of a length-one vector.
    pub fn as_scalar(&self) -> Option<u64> {
        match self.0.as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn checked_add(&self, other: &NatVec) -> Option<NatVec> {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b)).collect::<Option<Vec<_>>>().map(NatVec)
    }

    pub fn add(&self, other: &NatVec) -> Result<NatVec> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    /// `self - other`, or `None` when some coordinate would go negative.
    pub fn checked_sub(&self, other: &NatVec) -> Option<NatVec> {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(NatVec)
    }

    pub fn scale(&self, k: u64) -> Result<NatVec> {
        self.0.iter().map(|a| a.checked_mul(k)).collect::<Option<Vec<_>>>().map(NatVec).ok_or(Error::Overflow)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &NatVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise `self <= other` and `self != other`.
    pub fn lt(&self, other: &NatVec) -> bool {
        self.le(other) && self != other
    }

    pub fn dot(&self, other: &NatVec) -> u64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Supports intersect, i.e. `x . y != 0` for exponent vectors.
    pub fn meets(&self, other: &NatVec) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| *a > 0 && *b > 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i)
    }

    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.0.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow)).collect()
    }

    /// `self = k * base` for some integer `k >= 1`.
    pub fn multiple_of(&self, base: &NatVec) -> Option<u64> {
        let mut k = None;
        for (&a, &b) in self.0.iter().zip(&base.0) {
            match (a, b) {
                (0, 0) => {}
                (_, 0) => return None,
                (a, b) => {
                    if a % b != 0 {
                        return None;
                    }
                    let q = a / b;
                    if *k.get_or_insert(q) != q {
                        return None;
                    }
                }
            }
        }
        k.filter(|&k| k >= 1)
    }
}

impl Index<usize> for NatVec {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl From<Vec<u64>> for NatVec {
    fn from(v: Vec<u64>) -> Self {
        NatVec(v)
    }
}

impl fmt::Display for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_scalar() {
            return write!(f, "{x}");
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Largest integer that survives a round trip through an IEEE double.
pub const JSON_SAFE_MAX: u64 = 1 << 53;

pub(crate) fn serialize_u64<S: Serializer>(x: u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x > JSON_SAFE_MAX {
        s.serialize_str(&x.to_string())
    } else {
        s.serialize_u64(x)
    }
}

struct SafeU64(u64);

impl Serialize for SafeU64 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_u64(self.0, s)
    }
}

/// Always serialized as a JSON array.
impl Serialize for NatVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&x| SafeU64(x)))
    }
}

/// Serializes a semigroup element: a bare number for numerical elements,
/// an array otherwise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Element(pub NatVec);

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.as_scalar() {
            Some(x) => serialize_u64(x, s),
            None => self.0.serialize(s),
        }
    }
}

/// Parses `"24,26,36,39"` (numerical) or `"(1,0,1);(0,1,0)"` (affine).
pub fn parse_generators(text: &str) -> Result<Vec<NatVec>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    if text.contains('(') {
        text.split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|part| {
                let inner = part
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("expected a parenthesised vector, got {part:?}")))?;
                parse_list(inner).map(NatVec)
            })
            .collect()
    } else {
        Ok(parse_list(text)?.into_iter().map(NatVec::scalar).collect())
    }
}

/// Parses a single element: `"156"` or `"(1,1,1)"`.
pub fn parse_element(text: &str) -> Result<NatVec> {
    let text = text.trim();
    match text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(inner) => parse_list(inner).map(NatVec),
        None => parse_u64(text).map(NatVec::scalar),
    }
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',').map(|t| parse_u64(t.trim())).collect()
}

fn parse_u64(t: &str) -> Result<u64> {
    t.parse::<u64>().map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
}

pub fn format_generators(gens: &[NatVec]) -> String {
    let sep = if gens.iter().all(|g| g.len() == 1) { "," } else { ";" };
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let g = parse_generators("24, 26,36,39").unwrap();
        assert_eq!(format_generators(&g), "24,26,36,39");
        let a = parse_generators("(1,0,1);(0,1,0);(1,1,0);(0,0,1)").unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(format_generators(&a), "(1,0,1);(0,1,0);(1,1,0);(0,0,1)");
        assert!(parse_generators("1,x").is_err());
        assert!(parse_generators("(1,2;(3,4)").is_err());
    }

    #[test]
    fn multiples() {
        let b = NatVec::new(vec![1, 2, 0]);
        assert_eq!(NatVec::new(vec![3, 6, 0]).multiple_of(&b), Some(3));
        assert_eq!(NatVec::new(vec![3, 5, 0]).multiple_of(&b), None);
        assert_eq!(NatVec::new(vec![3, 6, 1]).multiple_of(&b), None);
    }
}
