use std::sync::Arc;

use crate::cdp::Cdp;
use crate::error::{CdpError, Result};
use crate::lattice::{LatticePolytope, LatticeVector};
use crate::plfunction::PlFunction;

fn split_last(p: &LatticeVector) -> (LatticeVector, i64) {
    let d = p.dim() - 1;
    (LatticeVector(p.0[..d].to_vec()), p.0[d])
}

/// Upper envelope and negated lower envelope of a polytope over its
/// projection forgetting the last coordinate.
pub fn polytope_to_cdp(p: &LatticePolytope) -> Result<Cdp> {
    if p.dim() < 2 {
        return Err(CdpError::Degenerate("need a polytope of dimension at least two".into()));
    }
    let proj: Vec<LatticeVector> = p.vertices().iter().map(|v| split_last(v).0).collect();
    let base = Arc::new(LatticePolytope::new(&proj)?);
    let upper = PlFunction::new(base.clone(), p.vertices().to_vec())?;
    let lower = p
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            let d = w.dim() - 1;
            w.0[d] = -w.0[d];
            w
        })
        .collect();
    let lower = PlFunction::new(base.clone(), lower)?;
    Ok(Cdp::new(base, vec![upper.stripped(), lower.stripped()])?.stripped())
}

/// Convex hull of the first graph and the reflection of the second.
pub fn cdp_to_polytope(c: &Cdp) -> Result<LatticePolytope> {
    if c.n() != 2 {
        return Err(CdpError::InvalidCdp(format!("a polytope needs exactly two functions, got {}", c.n())));
    }
    let d = c.dim();
    let mut pts: Vec<LatticeVector> = c.functions()[0].graph_vertices().to_vec();
    pts.extend(c.functions()[1].graph_vertices().iter().map(|v| {
        let mut w = v.clone();
        w.0[d] = -w.0[d];
        w
    }));
    LatticePolytope::new(&pts)
}

/// Some interior lattice point has every facet at lattice distance one.
/// Decided directly on the facet description.
pub fn is_reflexive(p: &LatticePolytope) -> bool {
    p.interior_lattice_points()
        .iter()
        .any(|q| p.facets().iter().all(|f| f.offset - f.normal.dot(q) == 1))
}
