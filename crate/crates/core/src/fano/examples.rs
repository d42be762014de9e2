use std::sync::Arc;

use super::{from_translated, FanoCertificate};
use crate::cdp::Cdp;
use crate::error::{CdpError, Result};
use crate::lattice::{LatticePolytope, LatticeVector};
use crate::plfunction::PlFunction;

/// Support of `min{1, x_k + 1} + <w, x>` on the cross polytope: values at the
/// vertices `±e_j` and at the origin.
fn kink_support(d: usize, k: usize, w: &[i64]) -> Vec<LatticeVector> {
    let mut pts = Vec::with_capacity(2 * d + 1);
    let mut origin = vec![0; d];
    origin.push(1);
    pts.push(LatticeVector(origin));
    for j in 0..d {
        for s in [1i64, -1] {
            let mut p = vec![0; d + 1];
            p[j] = s;
            let base_value = if j == k && s == -1 { 0 } else { 1 };
            p[d] = base_value + s * w[j];
            pts.push(LatticeVector(p));
        }
    }
    pts
}

/// Normalized Fano CDP with `4d` functions on the `d`-dimensional cross
/// polytope: four copies of `min{1, x_k + 1}` for each `k < d`, three copies
/// of `min{1, x_d + 1}`, and `min{1, x_d + 1} - 2 Σ x_j`.
pub fn cross_example(d: usize) -> Result<(Cdp, FanoCertificate)> {
    if d < 1 {
        return Err(CdpError::Degenerate("cross polytope dimension must be at least one".into()));
    }
    let base = Arc::new(LatticePolytope::cross_polytope(d)?);
    let zero = vec![0; d];
    let mut functions = Vec::with_capacity(4 * d);
    for k in 0..d - 1 {
        for _ in 0..4 {
            functions.push(PlFunction::new(base.clone(), kink_support(d, k, &zero))?);
        }
    }
    for _ in 0..3 {
        functions.push(PlFunction::new(base.clone(), kink_support(d, d - 1, &zero))?);
    }
    functions.push(PlFunction::new(base.clone(), kink_support(d, d - 1, &vec![-2; d]))?);
    let n = functions.len() as i64;
    let mut a = vec![-1; functions.len()];
    a[functions.len() - 1] = n - 3;
    from_translated(base, functions.into_iter().map(|f| f.stripped()).collect(), a)
}
