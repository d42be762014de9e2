use serde::{Deserialize, Serialize};

use super::{translated, FanoCertificate};
use crate::cdp::Cdp;
use crate::error::{CdpError, Result};
use crate::lattice::{det, IntMatrix, LatticePolytope, LatticeVector};
use crate::rat::Rat;

/// `Σ_j 4 / α_{e_j}` for a lattice basis `e_1..e_d`: an upper bound on the
/// number of functions of a normalized Fano CDP over the box.
pub fn c_of_box(b: &LatticePolytope, basis: &[LatticeVector]) -> Result<Rat> {
    b.require_origin_interior()?;
    if basis.len() != b.dim() {
        return Err(CdpError::DimensionMismatch { expected: b.dim(), found: basis.len() });
    }
    let d = det(&IntMatrix::from_columns(basis))?;
    if d.abs() != 1 {
        return Err(CdpError::NotUnimodular(d.to_string()));
    }
    let mut total = Rat::zero();
    for e in basis {
        total += Rat::from(4) / b.alpha_v(e)?;
    }
    Ok(total)
}

/// Count of translated functions that are non-integral or non-linear along a
/// line through the origin, with the bound it must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionalBound {
    pub v: LatticeVector,
    pub alpha: Rat,
    pub bound: Rat,
    pub r: usize,
    pub n: usize,
    /// The line meets the boundary at a non-lattice point in a planar base, so
    /// the bound applies to all `n` functions.
    pub covers_all_functions: bool,
}

/// Counts the functions that are non-integral or non-linear along `span(v)`
/// and checks `r <= 4 / α_v`; in dimension two, when the line leaves the base
/// through a non-lattice point, also checks `n <= 4 / α_v`.
pub fn directional_bound(c: &Cdp, cert: &FanoCertificate, v: &LatticeVector) -> Result<DirectionalBound> {
    if v.content() != 1 {
        return Err(CdpError::NotPrimitive(v.0.clone()));
    }
    let t = translated(c, cert)?;
    let alpha = t.base.alpha_v(v)?;
    let bound = Rat::from(4) / &alpha;
    let zero = LatticeVector::zero(c.dim());
    let mut r = 0;
    for f in &t.functions {
        let integral = f.eval_lattice_unchecked(&zero) == Rat::one();
        if !integral || !f.is_linear_along(v)? {
            r += 1;
        }
    }
    let covers_all_functions = c.dim() == 2 && {
        let (p, q) = t.functions[0].chord(v)?;
        !(p.iter().all(Rat::is_integer) && q.iter().all(Rat::is_integer))
    };
    if Rat::from(r as i64) > bound {
        return Err(CdpError::BoundViolation(format!("{r} functions bend along {v}, above 4/alpha = {bound}")));
    }
    if covers_all_functions && Rat::from(c.n() as i64) > bound {
        return Err(CdpError::BoundViolation(format!("{} functions, above 4/alpha = {bound} along {v}", c.n())));
    }
    Ok(DirectionalBound { v: v.clone(), alpha, bound, r, n: c.n(), covers_all_functions })
}
