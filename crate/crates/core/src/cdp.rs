//! A base polytope with an ordered tuple of functions on it.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CdpError, Result};
use crate::lattice::{LatticePolytope, LatticeVector};
use crate::plfunction::{PlFunction, PlFunctionJson};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdp {
    base: Arc<LatticePolytope>,
    functions: Vec<PlFunction>,
}

/// On-disk form of a CDP.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdpJson {
    pub base: LatticePolytope,
    pub functions: Vec<PlFunctionJson>,
}

impl Cdp {
    /// Builds a CDP and checks positivity of the sum on the interior.
    pub fn new(base: Arc<LatticePolytope>, functions: Vec<PlFunction>) -> Result<Self> {
        let c = Self::new_unchecked(base, functions)?;
        if !check_positivity(&c) {
            return Err(CdpError::InvalidCdp("sum of the functions is not positive on the interior".into()));
        }
        Ok(c)
    }

    /// Builds the tuple without the positivity test.
    pub fn new_unchecked(base: Arc<LatticePolytope>, functions: Vec<PlFunction>) -> Result<Self> {
        if functions.is_empty() {
            return Err(CdpError::InvalidCdp("a CDP needs at least one function".into()));
        }
        let mut out = Vec::with_capacity(functions.len());
        for f in functions {
            if **f.base() != *base {
                return Err(CdpError::InvalidCdp("functions live on different bases".into()));
            }
            out.push(f.rebase(base.clone()));
        }
        Ok(Cdp { base, functions: out })
    }

    /// Convenience constructor from raw support point lists.
    pub fn from_supports(base: LatticePolytope, supports: &[Vec<Vec<i64>>]) -> Result<Self> {
        let base = Arc::new(base);
        let functions = supports
            .iter()
            .map(|s| PlFunction::new(base.clone(), s.iter().map(|p| LatticeVector(p.clone())).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, functions)
    }

    pub fn from_json(raw: &CdpJson) -> Result<Self> {
        let c = Self::from_json_unchecked(raw)?;
        if !check_positivity(&c) {
            return Err(CdpError::InvalidCdp("sum of the functions is not positive on the interior".into()));
        }
        Ok(c)
    }

    pub fn from_json_unchecked(raw: &CdpJson) -> Result<Self> {
        let base = Arc::new(raw.base.clone());
        let functions =
            raw.functions.iter().map(|f| PlFunction::from_json(base.clone(), f)).collect::<Result<Vec<_>>>()?;
        Self::new_unchecked(base, functions)
    }

    pub fn to_json(&self) -> CdpJson {
        CdpJson { base: (*self.base).clone(), functions: self.functions.iter().map(|f| f.to_json()).collect() }
    }

    pub fn base(&self) -> &Arc<LatticePolytope> {
        &self.base
    }

    pub fn functions(&self) -> &[PlFunction] {
        &self.functions
    }

    pub fn n(&self) -> usize {
        self.functions.len()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn sum_at(&self, u: &[Rat]) -> Rat {
        self.functions.iter().map(|f| f.eval_unchecked(u)).sum()
    }

    pub fn sum_at_lattice(&self, u: &LatticeVector) -> Rat {
        self.functions.iter().map(|f| f.eval_lattice_unchecked(u)).sum()
    }

    /// Same functions with every support reduced to its graph vertices.
    pub fn stripped(&self) -> Cdp {
        Cdp { base: self.base.clone(), functions: self.functions.iter().map(|f| f.stripped()).collect() }
    }

    /// Checks the defining conditions: shared base, integral graph vertices
    /// (by construction) and positivity.
    pub fn validate(&self) -> Result<()> {
        if check_positivity(self) {
            Ok(())
        } else {
            Err(CdpError::InvalidCdp("sum of the functions is not positive on the interior".into()))
        }
    }
}

impl Serialize for Cdp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cdp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CdpJson::deserialize(d)?;
        Cdp::from_json(&raw).map_err(serde::de::Error::custom)
    }
}

/// Positivity of the sum on the interior of the base.
///
/// The sum is concave, so its minimum over the base is attained at a vertex,
/// and a nonnegative concave function vanishing at an interior point vanishes
/// identically. Hence: nonnegative at every vertex and positive at the barycenter.
pub fn check_positivity(c: &Cdp) -> bool {
    c.base.vertices().iter().all(|v| !c.sum_at_lattice(v).is_negative()) && c.sum_at(&c.base.barycenter()).is_positive()
}
