//! Fano certificates: an interior lattice point as origin and integer shifts
//! putting every graph at height one.

mod bounds;
mod examples;
mod toric;

pub use bounds::{c_of_box, directional_bound, DirectionalBound};
pub use examples::cross_example;
pub use toric::{cdp_to_polytope, is_reflexive, polytope_to_cdp};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cdp::Cdp;
use crate::error::{CdpError, Result};
use crate::lattice::{polytope_barycenter, require_primitive, LatticePolytope, LatticeVector, UnimodularAffineMap};
use crate::plfunction::PlFunction;

/// Origin and shifts `a_i`; the translated functions are `Ψ_i + a_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanoCertificate {
    pub origin: LatticeVector,
    #[serde(with = "crate::lattice::json_ints")]
    pub a: Vec<i64>,
}

/// The four defining conditions, numbered as usual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    InteriorOrigin = 1,
    ShiftSum = 2,
    HeightOne = 3,
    BoundarySum = 4,
}

impl Condition {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Why a particular origin does not certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginFailure {
    pub origin: LatticeVector,
    pub condition: Condition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotFano {
    /// One entry per interior lattice point tried, in search order. Empty when
    /// the base has no interior lattice point.
    pub attempts: Vec<OriginFailure>,
}

impl NotFano {
    /// The violated condition: 1 without interior lattice points, otherwise the
    /// highest-numbered condition reached by any origin.
    pub fn condition(&self) -> Condition {
        self.attempts.iter().map(|a| a.condition).max().unwrap_or(Condition::InteriorOrigin)
    }
}

impl fmt::Display for NotFano {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.attempts.is_empty() {
            return write!(f, "condition 1: the base has no interior lattice point");
        }
        for (k, a) in self.attempts.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "origin {}: condition {}: {}", a.origin, a.condition.number(), a.detail)?;
        }
        Ok(())
    }
}

impl std::error::Error for NotFano {}

/// `|offset| = 1` for a primitive normal.
pub fn facet_at_height_one(normal: &LatticeVector, offset: i64) -> Result<bool> {
    require_primitive(normal)?;
    Ok(offset.abs() == 1)
}

/// Integer shift putting `f` at height one around `origin` with a positive
/// value there, trying the candidates pinned by the first facet in ascending order.
pub(crate) fn height_one_shift(f: &PlFunction, origin: &LatticeVector) -> Option<i64> {
    let d = origin.dim();
    let centered = |normal: &LatticeVector, offset: i64| -> (i64, i64) {
        let s: i64 = normal.0[..d].iter().zip(&origin.0).map(|(a, b)| a * b).sum();
        (offset - s, normal.0[d])
    };
    let first = &f.pieces()[0];
    let (o, nt) = centered(&first.graph_normal, first.graph_offset);
    let value = f.eval_lattice_unchecked(origin);
    [-1i64, 1]
        .iter()
        .filter(|&&s| (s - o) % nt == 0)
        .map(|&s| (s - o) / nt)
        .filter(|&t| {
            f.pieces().iter().all(|p| {
                let (o, nt) = centered(&p.graph_normal, p.graph_offset);
                (o + t * nt).abs() == 1
            }) && (&value + t).is_positive()
        })
        .min()
}

/// Tests the four conditions with `origin` as the origin.
pub fn certificate_at(c: &Cdp, origin: &LatticeVector) -> std::result::Result<FanoCertificate, OriginFailure> {
    let fail = |condition, function, detail: String| OriginFailure { origin: origin.clone(), condition, function, detail };
    let base = c.base();
    if !base.is_interior_lattice(origin) {
        return Err(fail(Condition::InteriorOrigin, None, "not an interior lattice point".into()));
    }
    let mut shifts = Vec::with_capacity(c.n());
    for (i, f) in c.functions().iter().enumerate() {
        match height_one_shift(f, origin) {
            Some(t) => shifts.push(t),
            None => {
                return Err(fail(
                    Condition::HeightOne,
                    Some(i),
                    format!("no integral shift puts function {i} at height one with positive value"),
                ))
            }
        }
    }
    let n = c.n() as i64;
    let total: i64 = shifts.iter().sum();
    if total != n - 2 {
        return Err(fail(Condition::ShiftSum, None, format!("the shifts a_i sum to {}, not -2", total - n)));
    }
    if let Some(detail) = boundary_sum_violation(c, origin) {
        return Err(fail(Condition::BoundarySum, None, detail));
    }
    Ok(FanoCertificate { origin: origin.clone(), a: shifts.iter().map(|t| t - 1).collect() })
}

/// Condition (4): on every base facet not at lattice distance one from the
/// origin the sum vanishes identically. The sum is concave, so vanishing at the
/// facet's vertices and at its barycenter is equivalent.
fn boundary_sum_violation(c: &Cdp, origin: &LatticeVector) -> Option<String> {
    let base = c.base();
    for facet in base.facets() {
        if facet.offset - facet.normal.dot(origin) == 1 {
            continue;
        }
        let verts = base.facet_vertices(facet);
        let nonzero_vertex = verts.iter().find(|v| !c.sum_at_lattice(v).is_zero());
        let center = polytope_barycenter(verts.iter().copied());
        if nonzero_vertex.is_some() || !c.sum_at(&center).is_zero() {
            return Some(format!(
                "sum does not vanish on the facet with normal {} at distance {}",
                facet.normal,
                facet.offset - facet.normal.dot(origin)
            ));
        }
    }
    None
}

/// Searches interior lattice points in lexicographic order.
pub fn find_certificate(c: &Cdp) -> std::result::Result<FanoCertificate, NotFano> {
    let mut attempts = Vec::new();
    for p in c.base().interior_lattice_points() {
        match certificate_at(c, &p) {
            Ok(cert) => return Ok(cert),
            Err(e) => attempts.push(e),
        }
    }
    Err(NotFano { attempts })
}

/// All certifying origins with their certificates.
pub fn all_certificates(c: &Cdp) -> Vec<FanoCertificate> {
    c.base().interior_lattice_points().iter().filter_map(|p| certificate_at(c, p).ok()).collect()
}

/// Checks a given certificate.
pub fn verify_certificate(c: &Cdp, cert: &FanoCertificate) -> Result<()> {
    if cert.a.len() != c.n() {
        return Err(CdpError::InvalidCertificate(format!("{} shifts for {} functions", cert.a.len(), c.n())));
    }
    let found = certificate_at(c, &cert.origin)
        .map_err(|e| CdpError::InvalidCertificate(format!("condition {}: {}", e.condition.number(), e.detail)))?;
    if found.a != cert.a {
        return Err(CdpError::InvalidCertificate(format!("shifts {:?} should be {:?}", cert.a, found.a)));
    }
    Ok(())
}

/// The translated functions `Ψ'_i = Ψ_i + a_i + 1` on the base moved so that
/// the certificate's origin sits at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translated {
    pub base: Arc<LatticePolytope>,
    pub functions: Vec<PlFunction>,
}

pub fn translated(c: &Cdp, cert: &FanoCertificate) -> Result<Translated> {
    verify_certificate(c, cert)?;
    Ok(translated_unchecked(c, cert))
}

pub(crate) fn translated_unchecked(c: &Cdp, cert: &FanoCertificate) -> Translated {
    let phi = UnimodularAffineMap::translation_by(cert.origin.neg());
    let base = Arc::new(c.base().map(&phi));
    let functions = c
        .functions()
        .iter()
        .zip(&cert.a)
        .map(|(f, a)| f.map_base(&phi, base.clone()).add_constant(a + 1))
        .collect();
    Translated { base, functions }
}

/// Builds a CDP from translated functions around the origin and their shifts.
pub fn from_translated(base: Arc<LatticePolytope>, functions: Vec<PlFunction>, a: Vec<i64>) -> Result<(Cdp, FanoCertificate)> {
    let raw = functions.iter().zip(&a).map(|(f, ai)| f.add_constant(-(ai + 1))).collect();
    let c = Cdp::new(base.clone(), raw)?;
    let cert = FanoCertificate { origin: LatticeVector::zero(base.dim()), a };
    verify_certificate(&c, &cert)?;
    Ok((c, cert))
}
