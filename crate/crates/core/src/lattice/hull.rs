use std::collections::HashSet;

use itertools::Itertools;

use super::{dot, primitive_i128, LatticeVector};
use crate::error::{CdpError, Result};

/// A facet `{x : <x, normal> = offset}` of a polytope lying in `<x, normal> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: i64,
    /// Indices of the polytope vertices on this facet.
    pub vertices: Vec<usize>,
}

/// An upper facet of a point configuration in dimension `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HullFacet {
    pub vertices: Vec<LatticeVector>,
    pub normal: LatticeVector,
    pub offset: i64,
}

/// Vertices and facets of `conv(points)`. Points must span their ambient space.
///
/// Returns the indices (into `points`) of the vertices, sorted, and the facets
/// with outward primitive normals. Facet vertex lists index into the returned
/// vertex list.
pub fn convex_hull(points: &[LatticeVector]) -> Result<(Vec<usize>, Vec<Facet>)> {
    let dim = points.first().map_or(0, |p| p.dim());
    if points.iter().any(|p| p.dim() != dim) {
        let bad = points.iter().find(|p| p.dim() != dim).unwrap();
        return Err(CdpError::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    if dim == 0 {
        return Err(CdpError::Degenerate("zero-dimensional ambient space".into()));
    }
    match dim {
        1 => hull_1d(points),
        2 => hull_2d(points),
        _ => hull_general(points, dim),
    }
}

fn hull_1d(points: &[LatticeVector]) -> Result<(Vec<usize>, Vec<Facet>)> {
    let lo = (0..points.len()).min_by_key(|&i| points[i].0[0]).unwrap();
    let hi = (0..points.len()).max_by_key(|&i| points[i].0[0]).unwrap();
    let (a, b) = (points[lo].0[0], points[hi].0[0]);
    if a == b {
        return Err(CdpError::Degenerate("all points coincide".into()));
    }
    let facets = vec![
        Facet { normal: LatticeVector(vec![-1]), offset: -a, vertices: vec![0] },
        Facet { normal: LatticeVector(vec![1]), offset: b, vertices: vec![1] },
    ];
    Ok((vec![lo, hi], facets))
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    let (ax, ay) = ((a[0] - o[0]) as i128, (a[1] - o[1]) as i128);
    let (bx, by) = ((b[0] - o[0]) as i128, (b[1] - o[1]) as i128);
    ax * by - ay * bx
}

/// Andrew's monotone chain; returns the counter-clockwise vertex cycle.
fn chain_2d(points: &[LatticeVector]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| points[i].cmp(&points[j]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross(&points[lower[lower.len() - 2]].0, &points[lower[lower.len() - 1]].0, &points[i].0) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross(&points[upper[upper.len() - 2]].0, &points[upper[upper.len() - 1]].0, &points[i].0) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_2d(points: &[LatticeVector]) -> Result<(Vec<usize>, Vec<Facet>)> {
    let cycle = chain_2d(points);
    if cycle.len() < 3 {
        return Err(CdpError::Degenerate("points are collinear".into()));
    }
    let mut sorted = cycle.clone();
    sorted.sort_unstable();
    let pos = |i: usize| sorted.binary_search(&i).unwrap();
    let mut facets = Vec::with_capacity(cycle.len());
    for k in 0..cycle.len() {
        let (p, q) = (&points[cycle[k]], &points[cycle[(k + 1) % cycle.len()]]);
        let (dx, dy) = ((q.0[0] - p.0[0]) as i128, (q.0[1] - p.0[1]) as i128);
        let n = primitive_i128(&[dy, -dx]).ok_or(CdpError::Overflow)?;
        let offset = dot(&n, &p.0);
        let mut verts = vec![pos(cycle[k]), pos(cycle[(k + 1) % cycle.len()])];
        verts.sort_unstable();
        facets.push(Facet { normal: LatticeVector(n), offset, vertices: verts });
    }
    facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));
    Ok((sorted, facets))
}

fn det_i128(rows: &mut [Vec<i128>]) -> Result<i128> {
    let n = rows.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if rows[k][k] == 0 {
            match (k + 1..n).find(|&i| rows[i][k] != 0) {
                Some(i) => {
                    rows.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = rows[i][j]
                    .checked_mul(rows[k][k])
                    .and_then(|x| x.checked_sub(rows[i][k].checked_mul(rows[k][j])?))
                    .ok_or(CdpError::Overflow)?;
                rows[i][j] = v / prev;
            }
        }
        prev = rows[k][k];
    }
    Ok(sign * rows[n - 1][n - 1])
}

/// Vector orthogonal to the `dim - 1` given difference vectors (generalized cross product).
fn orthogonal(diffs: &[Vec<i64>], dim: usize) -> Result<Vec<i128>> {
    let mut n = Vec::with_capacity(dim);
    for skip in 0..dim {
        let mut m: Vec<Vec<i128>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &x)| x as i128).collect())
            .collect();
        let c = det_i128(&mut m)?;
        n.push(if skip % 2 == 0 { c } else { -c });
    }
    Ok(n)
}

pub(crate) fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let g = num_integer::Integer::gcd(&a, &b);
                let (fa, fb) = (b / g, a / g);
                for j in 0..cols {
                    rows[i][j] = rows[i][j] * fb - rows[r][j] * fa;
                }
                let h = rows[i].iter().fold(0i128, |g, &x| num_integer::Integer::gcd(&g, &x));
                if h > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= h);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn hull_general(points: &[LatticeVector], dim: usize) -> Result<(Vec<usize>, Vec<Facet>)> {
    let mut uniq: Vec<usize> = (0..points.len()).collect();
    uniq.sort_by(|&i, &j| points[i].cmp(&points[j]));
    uniq.dedup_by(|a, b| points[*a] == points[*b]);
    let base = &points[uniq[0]];
    let diffs: Vec<Vec<i64>> = uniq.iter().map(|&i| points[i].sub(base).0).collect();
    if rank(&diffs) < dim {
        return Err(CdpError::Degenerate("points do not span the ambient space".into()));
    }
    let mut seen: HashSet<(Vec<i64>, i64)> = HashSet::new();
    let mut planes: Vec<(Vec<i64>, i64)> = Vec::new();
    for combo in uniq.iter().copied().combinations(dim) {
        let p0 = &points[combo[0]];
        let diffs: Vec<Vec<i64>> = combo[1..].iter().map(|&i| points[i].sub(p0).0).collect();
        let n = orthogonal(&diffs, dim)?;
        let Some(mut n) = primitive_i128(&n) else { continue };
        let mut off = dot(&n, &p0.0);
        let (mut above, mut below) = (false, false);
        for &i in &uniq {
            let v = dot(&n, &points[i].0);
            above |= v > off;
            below |= v < off;
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        if above {
            n.iter_mut().for_each(|x| *x = -*x);
            off = -off;
        }
        if seen.insert((n.clone(), off)) {
            planes.push((n, off));
        }
    }
    // a point is a vertex iff the normals of the facets through it have full rank
    let mut vertices: Vec<usize> = uniq
        .iter()
        .copied()
        .filter(|&i| {
            let normals: Vec<Vec<i64>> =
                planes.iter().filter(|(n, o)| dot(n, &points[i].0) == *o).map(|(n, _)| n.clone()).collect();
            rank(&normals) == dim
        })
        .collect();
    vertices.sort_unstable();
    let mut facets: Vec<Facet> = planes
        .into_iter()
        .map(|(n, o)| {
            let verts = vertices
                .iter()
                .enumerate()
                .filter(|(_, &i)| dot(&n, &points[i].0) == o)
                .map(|(k, _)| k)
                .collect();
            Facet { normal: LatticeVector(n), offset: o, vertices: verts }
        })
        .collect();
    facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));
    Ok((vertices, facets))
}

/// Upper facets of `conv(points)`, points in dimension `d + 1`.
///
/// A facet is upper when its outward primitive normal has a positive last
/// coordinate. The projection of the points to the first `d` coordinates must
/// be full-dimensional.
pub fn upper_hull(points: &[LatticeVector]) -> Result<Vec<HullFacet>> {
    let dim = points.first().map_or(0, |p| p.dim());
    if dim < 2 {
        return Err(CdpError::Degenerate("graph points need at least two coordinates".into()));
    }
    if dim == 2 {
        return upper_hull_2(points);
    }
    let tmin = points.iter().map(|p| p.0[dim - 1]).min().unwrap();
    let mut lifted: Vec<LatticeVector> = points.to_vec();
    for p in points {
        let mut q = p.clone();
        q.0[dim - 1] = tmin - 1;
        lifted.push(q);
    }
    let (vertices, facets) = convex_hull(&lifted).map_err(|e| match e {
        CdpError::Degenerate(_) => CdpError::Degenerate("projection of the points is not full-dimensional".into()),
        other => other,
    })?;
    let mut out = Vec::new();
    for f in facets {
        if f.normal.0[dim - 1] <= 0 {
            continue;
        }
        let mut vs: Vec<LatticeVector> = f.vertices.iter().map(|&k| lifted[vertices[k]].clone()).collect();
        vs.sort();
        out.push(HullFacet { vertices: vs, normal: f.normal, offset: f.offset });
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

fn upper_hull_2(points: &[LatticeVector]) -> Result<Vec<HullFacet>> {
    let mut pts: Vec<&LatticeVector> = points.iter().collect();
    // for equal x keep only the highest point
    pts.sort_by(|a, b| a.0[0].cmp(&b.0[0]).then(b.0[1].cmp(&a.0[1])));
    pts.dedup_by(|a, b| a.0[0] == b.0[0]);
    if pts.len() < 2 {
        return Err(CdpError::Degenerate("projection of the points is not full-dimensional".into()));
    }
    let mut chain: Vec<&LatticeVector> = Vec::new();
    for p in pts {
        while chain.len() >= 2 && cross(&chain[chain.len() - 2].0, &chain[chain.len() - 1].0, &p.0) >= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    let mut out = Vec::with_capacity(chain.len() - 1);
    for w in chain.windows(2) {
        let (p, q) = (w[0], w[1]);
        let (dx, dy) = ((q.0[0] - p.0[0]) as i128, (q.0[1] - p.0[1]) as i128);
        let n = primitive_i128(&[-dy, dx]).ok_or(CdpError::Overflow)?;
        let offset = dot(&n, &p.0);
        out.push(HullFacet { vertices: vec![p.clone(), q.clone()], normal: LatticeVector(n), offset });
    }
    Ok(out)
}
