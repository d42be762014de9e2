//! Integer vectors, matrices, hulls and lattice polytopes.

mod basis;
mod hull;
mod matrix;
mod polytope;

pub use basis::{find_orth_basis, OrthBasis};
pub use hull::{convex_hull, upper_hull, Facet, HullFacet};
pub use matrix::{det, hnf_transform, inverse_unimodular, IntMatrix, UnimodularAffineMap};
pub use polytope::LatticePolytope;
pub(crate) use polytope::barycenter as polytope_barycenter;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{CdpError, Result};
use crate::rat::Rat;

/// A point of the lattice `Z^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector(pub Vec<i64>);

impl Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&x| JsonInt(x)))
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<JsonInt> = Vec::deserialize(d)?;
        Ok(LatticeVector(v.into_iter().map(|x| x.0).collect()))
    }
}

const JSON_SAFE: i64 = 1 << 53;

/// An integer written as a JSON number when it survives a double round trip,
/// and as a decimal string otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JsonInt(pub i64);

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.abs() <= JSON_SAFE {
            s.serialize_i64(self.0)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(JsonInt(x)),
            Repr::Str(s) => s.trim().parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(d: usize) -> Self {
        LatticeVector(vec![0; d])
    }

    pub fn unit(d: usize, k: usize) -> Self {
        let mut v = vec![0; d];
        v[k] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &LatticeVector) -> i64 {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(-1)
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|&x| Rat::from(x)).collect()
    }

    pub fn content(&self) -> i64 {
        content(&self.0)
    }

    /// Dot product with a rational point.
    pub fn dot_rat(&self, u: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(u)
            .filter(|(a, _)| **a != 0)
            .map(|(&a, x)| x * a)
            .sum()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of all entries, zero for the zero vector.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the gcd of the entries.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g == 0 {
        return Err(CdpError::ZeroVector);
    }
    Ok(LatticeVector(v.0.iter().map(|x| x / g).collect()))
}

pub(crate) fn primitive_i128(v: &[i128]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    v.iter().map(|x| i64::try_from(x / g).ok()).collect()
}

/// Checks that `v` is primitive and returns it, for callers that require it.
pub fn require_primitive(v: &LatticeVector) -> Result<()> {
    if v.content() == 1 {
        Ok(())
    } else {
        Err(CdpError::NotPrimitive(v.0.clone()))
    }
}

/// Serde adapter writing `Vec<i64>` with [`JsonInt`] entries.
pub mod json_ints {
    use super::JsonInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[i64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|&x| JsonInt(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
        let v: Vec<JsonInt> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|x| x.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&lv(&[2, 4])).unwrap(), lv(&[1, 2]));
        assert_eq!(primitive(&lv(&[0, -3])).unwrap(), lv(&[0, -1]));
        assert_eq!(primitive(&lv(&[6, 10, 15])).unwrap(), lv(&[6, 10, 15]));
        assert_eq!(primitive(&lv(&[0, 0])), Err(CdpError::ZeroVector));
    }

    #[test]
    fn serde_is_a_plain_array() {
        let s = serde_json::to_string(&lv(&[1, -2])).unwrap();
        assert_eq!(s, "[1,-2]");
        let big = lv(&[1 << 60, 3]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, format!("[\"{}\",3]", 1i64 << 60));
        assert_eq!(serde_json::from_str::<LatticeVector>(&s).unwrap(), big);
    }
}
