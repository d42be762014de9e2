use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{det, primitive, IntMatrix, LatticePolytope, LatticeVector, UnimodularAffineMap};
use crate::error::{CdpError, Result};

/// Outcome of the consecutive-ray sweep on a polygon around the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrthBasis {
    /// The polygon is `conv{±v1, ±v2}`; the map sends it to the standard cross polytope.
    CrossEquivalence { map: UnimodularAffineMap },
    /// A lattice basis with `-e1, -e2` in the polygon and `witness = a e1 + b e2`
    /// in the polygon for integers `a, b >= 0`.
    Basis { e1: LatticeVector, e2: LatticeVector, witness: LatticeVector },
}

fn upper_half(v: &LatticeVector) -> bool {
    v.0[1] > 0 || (v.0[1] == 0 && v.0[0] > 0)
}

fn angle_cmp(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    match (upper_half(a), upper_half(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let c = a.0[0] as i128 * b.0[1] as i128 - a.0[1] as i128 * b.0[0] as i128;
            0.cmp(&c)
        }
    }
}

/// Coordinates of `w` in the basis `(p, q)`, assuming `det[p q] = ±1`.
fn coords(p: &LatticeVector, q: &LatticeVector, w: &LatticeVector) -> (i64, i64) {
    let d = p.0[0] * q.0[1] - p.0[1] * q.0[0];
    let a = (w.0[0] * q.0[1] - w.0[1] * q.0[0]) * d;
    let b = (p.0[0] * w.0[1] - p.0[1] * w.0[0]) * d;
    (a, b)
}

/// Finds a lattice basis adapted to a two-dimensional polygon with the
/// origin in its interior, or recognises the polygon as a cross polytope.
pub fn find_orth_basis(b: &LatticePolytope) -> Result<OrthBasis> {
    if b.dim() != 2 {
        return Err(CdpError::DimensionMismatch { expected: 2, found: b.dim() });
    }
    b.require_origin_interior()?;
    let points: Vec<LatticeVector> = b.lattice_points().into_iter().filter(|p| !p.is_zero()).collect();
    let mut rays: Vec<LatticeVector> = points.iter().map(|p| primitive(p).unwrap()).collect();
    rays.sort_by(angle_cmp);
    rays.dedup();
    let m = rays.len();
    let ray = |i: usize| &rays[i % m];

    // the cone (v_i, v_{i+1}) containing w, with w's coordinates in that basis
    let locate = |w: &LatticeVector| -> (usize, i64, i64) {
        (0..m)
            .find_map(|i| {
                let (a, c) = coords(ray(i), ray(i + 1), w);
                (a >= 0 && c >= 0).then_some((i, a, c))
            })
            .expect("consecutive rays cover the plane")
    };

    let v1 = ray(0).clone();
    let v2 = ray(1).clone();
    let (i, a, c) = locate(&v1.neg());
    let result = if a > 0 && c > 0 {
        OrthBasis::Basis { e1: ray(i).neg(), e2: ray(i + 1).neg(), witness: v1 }
    } else {
        // -v1 spans a ray itself; re-anchor the cone so that it starts at -v1
        let i = (0..m).find(|&k| *ray(k) == v1.neg()).expect("-v1 lies on a ray");
        let (a2, c2) = coords(ray(i), ray(i + 1), &v2.neg());
        if a2 > 0 && c2 > 0 {
            OrthBasis::Basis { e1: ray(i).neg(), e2: ray(i + 1).neg(), witness: v2 }
        } else if a2 == 0 && c2 > 0 {
            // ±v1 and ±v2 all lie in the polygon
            let others: Vec<&LatticeVector> =
                points.iter().filter(|p| ![&v1, &v2, &v1.neg(), &v2.neg()].contains(p)).collect();
            match others.first() {
                Some(w) => {
                    let (x, y) = coords(&v1, &v2, w);
                    let e1 = if x < 0 { v1.neg() } else { v1.clone() };
                    let e2 = if y < 0 { v2.neg() } else { v2.clone() };
                    OrthBasis::Basis { e1, e2, witness: (*w).clone() }
                }
                None => {
                    let m = IntMatrix::from_columns(&[v1, v2]);
                    let map = UnimodularAffineMap::linear(m)?.inverse();
                    OrthBasis::CrossEquivalence { map }
                }
            }
        } else {
            // -v2 is outside (v_i, v_{i+1}), so -v_{i+1} is inside cone(v1, v2)
            OrthBasis::Basis { e1: v1.neg(), e2: v2.neg(), witness: ray(i + 1).clone() }
        }
    };
    verify(b, &result)?;
    Ok(result)
}

fn verify(b: &LatticePolytope, r: &OrthBasis) -> Result<()> {
    match r {
        OrthBasis::CrossEquivalence { map } => {
            if b.map(map) != LatticePolytope::cross_polytope(2)? {
                return Err(CdpError::Degenerate("cross polytope map does not match".into()));
            }
        }
        OrthBasis::Basis { e1, e2, witness } => {
            let d = det(&IntMatrix::from_columns(&[e1.clone(), e2.clone()]))?;
            let (x, y) = coords(e1, e2, witness);
            if d.abs() != 1
                || !b.contains_lattice(&e1.neg())
                || !b.contains_lattice(&e2.neg())
                || !b.contains_lattice(witness)
                || x < 0
                || y < 0
            {
                return Err(CdpError::Degenerate("ray sweep produced an invalid basis".into()));
            }
        }
    }
    Ok(())
}
