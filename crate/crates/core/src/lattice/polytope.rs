use serde::{Deserialize, Serialize};

use super::hull::convex_hull;
use super::{dot, Facet, LatticeVector, UnimodularAffineMap};
use crate::error::{CdpError, Result};
use crate::rat::Rat;

/// A full-dimensional polytope with integer vertices, kept in both
/// representations. Vertices are sorted lexicographically and facets by
/// `(normal, offset)`, so equal point sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
    facets: Vec<Facet>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    vertices: Vec<LatticeVector>,
}

impl TryFrom<PolytopeJson> for LatticePolytope {
    type Error = CdpError;
    fn try_from(raw: PolytopeJson) -> Result<Self> {
        LatticePolytope::new(&raw.vertices)
    }
}

impl From<LatticePolytope> for PolytopeJson {
    fn from(p: LatticePolytope) -> Self {
        PolytopeJson { vertices: p.vertices }
    }
}

impl LatticePolytope {
    /// Convex hull of the given points; redundant points are dropped.
    pub fn new(points: &[LatticeVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(CdpError::Degenerate("empty point set".into()));
        }
        let (vidx, facets) = convex_hull(points)?;
        Ok(Self::from_hull(points[0].dim(), vidx.iter().map(|&i| points[i].clone()).collect(), facets))
    }

    fn from_hull(dim: usize, vertices: Vec<LatticeVector>, facets: Vec<Facet>) -> Self {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut rank = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let vertices: Vec<LatticeVector> = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut facets: Vec<Facet> = facets
            .into_iter()
            .map(|mut f| {
                f.vertices = f.vertices.iter().map(|&i| rank[i]).collect();
                f.vertices.sort_unstable();
                f
            })
            .collect();
        facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));
        LatticePolytope { dim, vertices, facets }
    }

    /// The segment `[a, b]` in dimension one.
    pub fn interval(a: i64, b: i64) -> Result<Self> {
        Self::new(&[LatticeVector(vec![a]), LatticeVector(vec![b])])
    }

    /// `conv{±e_1, ..., ±e_d}`.
    pub fn cross_polytope(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(CdpError::Degenerate("cross polytope of dimension zero".into()));
        }
        let mut pts = Vec::with_capacity(2 * d);
        for k in 0..d {
            pts.push(LatticeVector::unit(d, k));
            pts.push(LatticeVector::unit(d, k).neg());
        }
        Self::new(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_vertices(&self, facet: &Facet) -> Vec<&LatticeVector> {
        facet.vertices.iter().map(|&i| &self.vertices[i]).collect()
    }

    /// Average of the vertices, a relative interior point.
    pub fn barycenter(&self) -> Vec<Rat> {
        barycenter(self.vertices.iter())
    }

    pub fn contains(&self, u: &[Rat]) -> bool {
        u.len() == self.dim && self.facets.iter().all(|f| f.normal.dot_rat(u) <= Rat::from(f.offset))
    }

    pub fn contains_interior(&self, u: &[Rat]) -> bool {
        u.len() == self.dim && self.facets.iter().all(|f| f.normal.dot_rat(u) < Rat::from(f.offset))
    }

    pub fn contains_lattice(&self, u: &LatticeVector) -> bool {
        u.dim() == self.dim && self.facets.iter().all(|f| f.normal.dot(u) <= f.offset)
    }

    pub fn is_interior_lattice(&self, u: &LatticeVector) -> bool {
        u.dim() == self.dim && self.facets.iter().all(|f| f.normal.dot(u) < f.offset)
    }

    /// Coordinate-wise bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let lo = (0..self.dim).map(|k| self.vertices.iter().map(|v| v.0[k]).min().unwrap()).collect();
        let hi = (0..self.dim).map(|k| self.vertices.iter().map(|v| v.0[k]).max().unwrap()).collect();
        (lo, hi)
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticeVector(cur.clone());
            if self.contains_lattice(&p) {
                out.push(p);
            }
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    cur[k + 1..].copy_from_slice(&lo[k + 1..]);
                    break;
                }
            }
        }
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticeVector> {
        self.lattice_points().into_iter().filter(|p| self.is_interior_lattice(p)).collect()
    }

    pub fn boundary_lattice_points(&self) -> Vec<LatticeVector> {
        self.lattice_points().into_iter().filter(|p| !self.is_interior_lattice(p)).collect()
    }

    /// Largest `t >= 0` with `t * v` in the polytope, for `v != 0` and the origin inside.
    pub fn ray_max(&self, v: &[Rat]) -> Option<Rat> {
        self.facets
            .iter()
            .filter_map(|f| {
                let s = f.normal.dot_rat(v);
                s.is_positive().then(|| Rat::from(f.offset) / s)
            })
            .min()
    }

    /// `min{1, max{t >= 0 : ±t v in the polytope}}` by ray shooting both ways.
    pub fn alpha_v(&self, v: &LatticeVector) -> Result<Rat> {
        self.require_origin_interior()?;
        if v.dim() != self.dim {
            return Err(CdpError::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        if v.is_zero() {
            return Err(CdpError::ZeroVector);
        }
        let vr = v.to_rat();
        let neg: Vec<Rat> = vr.iter().map(|x| -x).collect();
        let a = self.ray_max(&vr).expect("bounded polytope");
        let b = self.ray_max(&neg).expect("bounded polytope");
        Ok(a.min(b).min(Rat::one()))
    }

    pub fn require_origin_interior(&self) -> Result<()> {
        if self.is_interior_lattice(&LatticeVector::zero(self.dim)) {
            Ok(())
        } else {
            Err(CdpError::OriginNotInterior)
        }
    }

    /// Image under a unimodular affine map, transforming both representations directly.
    pub fn map(&self, phi: &UnimodularAffineMap) -> LatticePolytope {
        let dual = phi.dual_linear();
        let vertices = self.vertices.iter().map(|v| phi.apply(v)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let n = LatticeVector(dual.mul_vec(&f.normal.0));
                let offset = f.offset + n.dot(phi.translation());
                Facet { normal: n, offset, vertices: f.vertices.clone() }
            })
            .collect();
        Self::from_hull(self.dim, vertices, facets)
    }

    pub fn translate(&self, t: &LatticeVector) -> LatticePolytope {
        self.map(&UnimodularAffineMap::translation_by(t.clone()))
    }

    /// Number of lattice points, strictly inside, used for reflexivity and fixtures.
    pub fn num_interior_lattice_points(&self) -> usize {
        self.interior_lattice_points().len()
    }

    /// Checks the structural invariants: every vertex satisfies every facet
    /// inequality, and each facet is tight on at least `dim` vertices spanning
    /// a hyperplane.
    pub fn check_invariants(&self) -> Result<()> {
        for f in &self.facets {
            if f.normal.content() != 1 {
                return Err(CdpError::NotPrimitive(f.normal.0.clone()));
            }
            for (i, v) in self.vertices.iter().enumerate() {
                let s = dot(&f.normal.0, &v.0);
                if s > f.offset || (s == f.offset) != f.vertices.contains(&i) {
                    return Err(CdpError::Degenerate(format!("facet {:?} inconsistent at {v}", f.normal)));
                }
            }
            if f.vertices.len() < self.dim {
                return Err(CdpError::Degenerate(format!("facet {:?} has too few vertices", f.normal)));
            }
            let p0 = &self.vertices[f.vertices[0]];
            let diffs: Vec<Vec<i64>> = f.vertices.iter().map(|&i| self.vertices[i].sub(p0).0).collect();
            if super::hull::rank(&diffs) != self.dim - 1 {
                return Err(CdpError::Degenerate(format!("facet {:?} does not span a hyperplane", f.normal)));
            }
        }
        Ok(())
    }
}

pub(crate) fn barycenter<'a>(pts: impl Iterator<Item = &'a LatticeVector>) -> Vec<Rat> {
    let pts: Vec<&LatticeVector> = pts.collect();
    let d = pts[0].dim();
    let k = pts.len() as i64;
    (0..d).map(|j| Rat::new(pts.iter().map(|p| p.0[j]).sum(), k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    #[test]
    fn interval_alpha() {
        let p = LatticePolytope::interval(-1, 1).unwrap();
        assert_eq!(p.alpha_v(&lv(&[1])).unwrap(), Rat::one());
        let p = LatticePolytope::interval(-1, 5).unwrap();
        assert_eq!(p.alpha_v(&lv(&[1])).unwrap(), Rat::one());
        let p = LatticePolytope::interval(0, 5).unwrap();
        assert_eq!(p.alpha_v(&lv(&[1])), Err(CdpError::OriginNotInterior));
    }

    #[test]
    fn cross_polytope_alpha() {
        let p = LatticePolytope::cross_polytope(2).unwrap();
        assert_eq!(p.alpha_v(&lv(&[1, 0])).unwrap(), Rat::one());
        assert_eq!(p.alpha_v(&lv(&[1, 1])).unwrap(), Rat::new(1, 2));
        assert_eq!(p.facets().len(), 4);
        p.check_invariants().unwrap();
    }

    #[test]
    fn triangle_alpha_is_one_half() {
        let p = LatticePolytope::new(&[lv(&[0, -1]), lv(&[1, 1]), lv(&[-1, 1])]).unwrap();
        assert_eq!(p.alpha_v(&lv(&[1, 0])).unwrap(), Rat::new(1, 2));
        assert_eq!(p.interior_lattice_points(), vec![lv(&[0, 0])]);
    }

    #[test]
    fn lattice_points_of_hexagon() {
        let p = LatticePolytope::new(&[lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 1]), lv(&[-1, 0]), lv(&[0, -1]), lv(&[1, -1])])
            .unwrap();
        assert_eq!(p.lattice_points().len(), 7);
        assert_eq!(p.interior_lattice_points(), vec![lv(&[0, 0])]);
        assert_eq!(p.boundary_lattice_points().len(), 6);
    }

    #[test]
    fn map_matches_recomputed_hull() {
        let p = LatticePolytope::new(&[lv(&[0, 0]), lv(&[3, 1]), lv(&[1, 2]), lv(&[-1, 1])]).unwrap();
        let phi = UnimodularAffineMap::new(
            super::super::IntMatrix(vec![vec![2, 1], vec![1, 1]]),
            lv(&[1, -2]),
        )
        .unwrap();
        let mapped = p.map(&phi);
        let direct = LatticePolytope::new(&p.vertices().iter().map(|v| phi.apply(v)).collect::<Vec<_>>()).unwrap();
        assert_eq!(mapped, direct);
        mapped.check_invariants().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let p = LatticePolytope::interval(-1, 2).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"vertices":[[-1],[2]]}"#);
        assert_eq!(serde_json::from_str::<LatticePolytope>(&s).unwrap(), p);
    }
}
