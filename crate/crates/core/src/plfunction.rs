//! Concave piecewise-affine functions with integral graph vertices.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CdpError, Result};
use crate::lattice::{upper_hull, LatticePolytope, LatticeVector, UnimodularAffineMap};
use crate::rat::Rat;

/// One maximal domain of linearity together with its graph facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub region: LatticePolytope,
    pub gradient: Vec<Rat>,
    pub constant: Rat,
    /// Primitive normal `(n, n_t)` with `n_t > 0`; the graph satisfies
    /// `<u, n> + n_t t = graph_offset` over the region.
    pub graph_normal: LatticeVector,
    pub graph_offset: i64,
    pub graph_vertices: Vec<LatticeVector>,
}

impl AffinePiece {
    fn from_facet(normal: LatticeVector, offset: i64, graph_vertices: Vec<LatticeVector>) -> Result<Self> {
        let d = normal.dim() - 1;
        let nt = normal.0[d];
        let gradient = normal.0[..d].iter().map(|&x| Rat::new(-x, nt)).collect();
        let constant = Rat::new(offset, nt);
        let proj: Vec<LatticeVector> = graph_vertices.iter().map(|p| LatticeVector(p.0[..d].to_vec())).collect();
        let region = LatticePolytope::new(&proj)?;
        Ok(AffinePiece { region, gradient, constant, graph_normal: normal, graph_offset: offset, graph_vertices })
    }

    pub fn value(&self, u: &[Rat]) -> Rat {
        let mut v = self.constant.clone();
        for (g, x) in self.gradient.iter().zip(u) {
            if !g.is_zero() && !x.is_zero() {
                v += g * x;
            }
        }
        v
    }

    pub fn value_lattice(&self, u: &LatticeVector) -> Rat {
        let d = u.dim();
        let s: i64 = self.graph_normal.0[..d].iter().zip(&u.0).map(|(a, b)| a * b).sum();
        Rat::new(self.graph_offset - s, self.graph_normal.0[d])
    }

    pub fn normal_height(&self) -> i64 {
        *self.graph_normal.0.last().unwrap()
    }

    pub fn is_integral_gradient(&self) -> bool {
        self.gradient.iter().all(Rat::is_integer)
    }
}

/// A concave function on a lattice polytope, given as the upper envelope of
/// finitely many integral points of `M x Z`.
#[derive(Clone)]
pub struct PlFunction {
    base: Arc<LatticePolytope>,
    support: Vec<LatticeVector>,
    pieces: Vec<AffinePiece>,
    vertices: Vec<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlFunctionJson {
    pub support_points: Vec<LatticeVector>,
}

impl PlFunction {
    pub fn new(base: Arc<LatticePolytope>, support: Vec<LatticeVector>) -> Result<Self> {
        let d = base.dim();
        if let Some(p) = support.iter().find(|p| p.dim() != d + 1) {
            return Err(CdpError::DimensionMismatch { expected: d + 1, found: p.dim() });
        }
        if support.is_empty() {
            return Err(CdpError::InvalidCdp("function without support points".into()));
        }
        let proj: Vec<LatticeVector> = support.iter().map(|p| LatticeVector(p.0[..d].to_vec())).collect();
        let shadow = LatticePolytope::new(&proj)
            .map_err(|_| CdpError::InvalidCdp("support points do not project onto a full-dimensional set".into()))?;
        if shadow != *base {
            return Err(CdpError::InvalidCdp(format!(
                "support points project onto {:?}, not onto the base {:?}",
                shadow.vertices(),
                base.vertices()
            )));
        }
        let facets = upper_hull(&support)?;
        let mut pieces = Vec::with_capacity(facets.len());
        for f in facets {
            pieces.push(AffinePiece::from_facet(f.normal, f.offset, f.vertices)?);
        }
        Ok(Self::from_pieces(base, support, pieces))
    }

    fn from_pieces(base: Arc<LatticePolytope>, support: Vec<LatticeVector>, mut pieces: Vec<AffinePiece>) -> Self {
        pieces.sort_by(|a, b| a.graph_vertices.cmp(&b.graph_vertices));
        let mut vertices: Vec<LatticeVector> = pieces.iter().flat_map(|p| p.graph_vertices.iter().cloned()).collect();
        vertices.sort();
        vertices.dedup();
        PlFunction { base, support, pieces, vertices }
    }

    /// Graph given by the values at the base vertices of an affine function.
    pub fn affine(base: Arc<LatticePolytope>, gradient: &LatticeVector, constant: i64) -> Result<Self> {
        let support = base
            .vertices()
            .iter()
            .map(|v| {
                let mut p = v.0.clone();
                p.push(gradient.dot(v) + constant);
                LatticeVector(p)
            })
            .collect();
        Self::new(base, support)
    }

    pub fn constant(base: Arc<LatticePolytope>, c: i64) -> Result<Self> {
        let d = base.dim();
        Self::affine(base, &LatticeVector::zero(d), c)
    }

    pub fn from_json(base: Arc<LatticePolytope>, raw: &PlFunctionJson) -> Result<Self> {
        Self::new(base, raw.support_points.clone())
    }

    pub fn to_json(&self) -> PlFunctionJson {
        PlFunctionJson { support_points: self.vertices.clone() }
    }

    pub fn base(&self) -> &Arc<LatticePolytope> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn support(&self) -> &[LatticeVector] {
        &self.support
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    /// Vertices of the graph, sorted.
    pub fn graph_vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Same function with the support reduced to the graph vertices.
    pub fn stripped(&self) -> PlFunction {
        PlFunction {
            base: self.base.clone(),
            support: self.vertices.clone(),
            pieces: self.pieces.clone(),
            vertices: self.vertices.clone(),
        }
    }

    pub fn evaluate(&self, u: &[Rat]) -> Result<Rat> {
        if u.len() != self.dim() {
            return Err(CdpError::DimensionMismatch { expected: self.dim(), found: u.len() });
        }
        if !self.base.contains(u) {
            return Err(CdpError::OutsideBase(format!("{u:?}")));
        }
        Ok(self.eval_unchecked(u))
    }

    /// Evaluation without the membership test; only meaningful inside the base.
    pub(crate) fn eval_unchecked(&self, u: &[Rat]) -> Rat {
        self.pieces.iter().map(|p| p.value(u)).min().expect("at least one piece")
    }

    pub fn evaluate_lattice(&self, u: &LatticeVector) -> Result<Rat> {
        if !self.base.contains_lattice(u) {
            return Err(CdpError::OutsideBase(u.to_string()));
        }
        Ok(self.eval_lattice_unchecked(u))
    }

    pub(crate) fn eval_lattice_unchecked(&self, u: &LatticeVector) -> Rat {
        self.pieces.iter().map(|p| p.value_lattice(u)).min().expect("at least one piece")
    }

    pub fn regions_of_linearity(&self) -> Vec<LatticePolytope> {
        self.pieces.iter().map(|p| p.region.clone()).collect()
    }

    pub fn is_affine(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Affine with integral gradient; then the constant is integral too.
    pub fn is_integral_affine(&self) -> bool {
        self.is_affine() && self.pieces[0].is_integral_gradient()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.vertices.iter().all(|p| *p.0.last().unwrap() == 0)
    }

    /// Whether every graph facet of `self + shift` lies at lattice distance one
    /// from the origin (offset `±1`).
    pub fn at_height_one_with_shift(&self, shift: i64) -> bool {
        self.pieces.iter().all(|p| (p.graph_offset + shift * p.normal_height()).abs() == 1)
    }

    /// With the origin interior and `self + shift` at height one: whether
    /// `self + shift` takes the value one at the origin, which decides integrality.
    pub fn is_integral(&self, certificate_shift: i64) -> Result<bool> {
        self.base.require_origin_interior()?;
        if !self.at_height_one_with_shift(certificate_shift) {
            return Err(CdpError::InvalidCertificate(format!(
                "function shifted by {certificate_shift} is not at height one"
            )));
        }
        let v = self.eval_lattice_unchecked(&LatticeVector::zero(self.dim())) + certificate_shift;
        Ok(v == Rat::one())
    }

    /// Endpoints of the chord `base ∩ span(v)` through the origin.
    pub fn chord(&self, v: &LatticeVector) -> Result<(Vec<Rat>, Vec<Rat>)> {
        self.base.require_origin_interior()?;
        if v.is_zero() {
            return Err(CdpError::ZeroVector);
        }
        let vr = v.to_rat();
        let neg: Vec<Rat> = vr.iter().map(|x| -x).collect();
        let a = self.base.ray_max(&vr).expect("bounded base");
        let b = self.base.ray_max(&neg).expect("bounded base");
        let p: Vec<Rat> = vr.iter().map(|x| x * &a).collect();
        let q: Vec<Rat> = neg.iter().map(|x| x * &b).collect();
        Ok((p, q))
    }

    /// Whether a single piece agrees with the function on the whole chord
    /// `base ∩ span(v)`. Agreement at both chord endpoints suffices: the piece
    /// dominates the function and concavity bounds it from below by the chord.
    pub fn is_linear_along(&self, v: &LatticeVector) -> Result<bool> {
        let (p, q) = self.chord(v)?;
        let fp = self.eval_unchecked(&p);
        let fq = self.eval_unchecked(&q);
        Ok(self.pieces.iter().any(|pc| pc.value(&p) == fp && pc.value(&q) == fq))
    }

    /// `f ∘ φ^{-1}` on `φ(base)`, transforming pieces in place.
    pub fn map_base(&self, phi: &UnimodularAffineMap, new_base: Arc<LatticePolytope>) -> PlFunction {
        let d = self.dim();
        let dual = phi.dual_linear();
        let lift = |p: &LatticeVector| {
            let mut q = phi.apply(&LatticeVector(p.0[..d].to_vec())).0;
            q.push(p.0[d]);
            LatticeVector(q)
        };
        let support = self.support.iter().map(lift).collect();
        let pieces = self
            .pieces
            .iter()
            .map(|pc| {
                let mut n = dual.mul_vec(&pc.graph_normal.0[..d]);
                let offset = pc.graph_offset + crate::lattice::LatticeVector(n.clone()).dot(phi.translation());
                n.push(pc.graph_normal.0[d]);
                let mut gv: Vec<LatticeVector> = pc.graph_vertices.iter().map(lift).collect();
                gv.sort();
                piece_from_parts(LatticeVector(n), offset, gv, pc.region.map(phi))
            })
            .collect();
        Self::from_pieces(new_base, support, pieces)
    }

    /// `f + <w, u> + c` for integral `w`, `c`.
    pub fn add_affine(&self, w: &LatticeVector, c: i64) -> PlFunction {
        let d = self.dim();
        let lift = |p: &LatticeVector| {
            let mut q = p.0.clone();
            q[d] += w.0.iter().zip(&p.0[..d]).map(|(a, b)| a * b).sum::<i64>() + c;
            LatticeVector(q)
        };
        let support = self.support.iter().map(lift).collect();
        let pieces = self
            .pieces
            .iter()
            .map(|pc| {
                let nt = pc.graph_normal.0[d];
                let mut n: Vec<i64> = pc.graph_normal.0[..d].iter().zip(&w.0).map(|(a, b)| a - nt * b).collect();
                n.push(nt);
                let gv = pc.graph_vertices.iter().map(lift).collect();
                piece_from_parts(LatticeVector(n), pc.graph_offset + nt * c, gv, pc.region.clone())
            })
            .collect();
        Self::from_pieces(self.base.clone(), support, pieces)
    }

    pub fn add_constant(&self, c: i64) -> PlFunction {
        self.add_affine(&LatticeVector::zero(self.dim()), c)
    }

    /// Same function on a base given by a different (but equal) shared pointer.
    pub(crate) fn rebase(&self, base: Arc<LatticePolytope>) -> PlFunction {
        debug_assert_eq!(*base, *self.base);
        PlFunction { base, ..self.clone() }
    }
}

fn piece_from_parts(normal: LatticeVector, offset: i64, graph_vertices: Vec<LatticeVector>, region: LatticePolytope) -> AffinePiece {
    let d = normal.dim() - 1;
    let nt = normal.0[d];
    AffinePiece {
        gradient: normal.0[..d].iter().map(|&x| Rat::new(-x, nt)).collect(),
        constant: Rat::new(offset, nt),
        region,
        graph_normal: normal,
        graph_offset: offset,
        graph_vertices,
    }
}

impl PartialEq for PlFunction {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && *self.base == *other.base
    }
}

impl Eq for PlFunction {}

impl fmt::Debug for PlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlFunction{:?}", self.vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn interval(a: i64, b: i64) -> Arc<LatticePolytope> {
        Arc::new(LatticePolytope::interval(a, b).unwrap())
    }

    fn func(base: &Arc<LatticePolytope>, pts: &[&[i64]]) -> PlFunction {
        PlFunction::new(base.clone(), pts.iter().map(|p| lv(p)).collect()).unwrap()
    }

    #[test]
    fn evaluates_segment_midpoint() {
        let b = interval(-1, 1);
        let f = func(&b, &[&[-1, 0], &[1, 1]]);
        assert_eq!(f.evaluate(&[Rat::zero()]).unwrap(), Rat::new(1, 2));
        assert!(f.evaluate(&[Rat::from(2)]).is_err());
    }

    #[test]
    fn constant_function() {
        let b = interval(-1, 1);
        let f = func(&b, &[&[-1, 1], &[1, 1]]);
        assert_eq!(f.evaluate(&[Rat::new(1, 3)]).unwrap(), Rat::one());
        assert!(f.is_integral(0).unwrap());
        assert!(f.is_linear_along(&lv(&[1])).unwrap());
    }

    #[test]
    fn tent_has_two_regions() {
        let b = interval(-1, 1);
        let f = func(&b, &[&[-1, 1], &[0, 1], &[1, 0]]);
        let regions = f.regions_of_linearity();
        assert_eq!(regions, vec![LatticePolytope::interval(-1, 0).unwrap(), LatticePolytope::interval(0, 1).unwrap()]);
        assert!(!f.is_linear_along(&lv(&[1])).unwrap());
    }

    #[test]
    fn redundant_support_points_are_ignored() {
        let b = interval(-1, 1);
        let f = func(&b, &[&[-1, 0], &[0, -3], &[1, 1], &[0, 0]]);
        assert_eq!(f.graph_vertices(), &[lv(&[-1, 0]), lv(&[1, 1])]);
        assert_eq!(f.stripped().support().len(), 2);
    }

    #[test]
    fn support_must_project_onto_base() {
        let b = interval(-1, 2);
        assert!(PlFunction::new(b.clone(), vec![lv(&[-1, 0]), lv(&[1, 1])]).is_err());
        assert!(PlFunction::new(b, vec![lv(&[-1, 0, 0])]).is_err());
    }

    #[test]
    fn integrality_by_value_at_origin() {
        let b = interval(-1, 1);
        let f = func(&b, &[&[-1, 0], &[1, 1]]);
        assert!(!f.is_integral(0).unwrap());
        assert!(f.is_integral(5).is_err());
        let b = interval(-1, 2);
        let g = func(&b, &[&[-1, 0], &[0, 1], &[2, 1]]);
        assert!(g.is_integral(0).unwrap());
    }

    #[test]
    fn fast_transforms_match_rebuilt_functions() {
        let b = Arc::new(LatticePolytope::cross_polytope(2).unwrap());
        let f = func(&b, &[&[1, 0, 0], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1], &[0, 0, 1]]);
        let w = lv(&[2, -1]);
        let g = f.add_affine(&w, 3);
        let rebuilt = PlFunction::new(b.clone(), g.support().to_vec()).unwrap();
        assert_eq!(g.pieces(), rebuilt.pieces());

        let phi = UnimodularAffineMap::new(crate::lattice::IntMatrix(vec![vec![1, 1], vec![0, 1]]), lv(&[1, -1])).unwrap();
        let nb = Arc::new(b.map(&phi));
        let h = f.map_base(&phi, nb.clone());
        let rebuilt = PlFunction::new(nb, h.support().to_vec()).unwrap();
        assert_eq!(h.pieces(), rebuilt.pieces());
    }

    #[test]
    fn cross_example_function_values() {
        let b = Arc::new(LatticePolytope::cross_polytope(2).unwrap());
        let f = func(&b, &[&[1, 0, 1], &[-1, 0, 0], &[0, 1, 1], &[0, -1, 1]]);
        assert_eq!(f.evaluate(&[Rat::new(-1, 2), Rat::zero()]).unwrap(), Rat::new(1, 2));
        assert_eq!(f.regions_of_linearity().len(), 2);
        assert!(f.is_linear_along(&lv(&[0, 1])).unwrap());
        assert!(!f.is_linear_along(&lv(&[1, 0])).unwrap());
    }
}
