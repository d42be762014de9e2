use serde::{Deserialize, Serialize};

use super::LatticeVector;
use crate::error::{CdpError, Result};
use crate::rat::Rat;

/// Square or rectangular integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix(pub Vec<Vec<i64>>);

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|r| LatticeVector(r.clone())))
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<LatticeVector> = Vec::deserialize(d)?;
        Ok(IntMatrix(rows.into_iter().map(|r| r.0).collect()))
    }
}

impl IntMatrix {
    pub fn identity(d: usize) -> IntMatrix {
        IntMatrix((0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[LatticeVector]) -> IntMatrix {
        let d = cols.first().map_or(0, |c| c.dim());
        IntMatrix((0..d).map(|i| cols.iter().map(|c| c.0[i]).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn cols(&self) -> usize {
        self.0.first().map_or(0, |r| r.len())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector(self.0.iter().map(|r| r[j]).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let (r, c) = (self.rows(), self.cols());
        IntMatrix((0..c).map(|j| (0..r).map(|i| self.0[i][j]).collect()).collect())
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        self.0.iter().map(|row| super::dot(row, v)).collect()
    }

    pub fn mul_vec_rat(&self, v: &[Rat]) -> Vec<Rat> {
        self.0
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, _)| **a != 0)
                    .map(|(&a, x)| x * a)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let inner = other.rows();
        IntMatrix(
            self.0
                .iter()
                .map(|row| {
                    (0..other.cols())
                        .map(|j| (0..inner).map(|k| row[k] * other.0[k][j]).sum())
                        .collect()
                })
                .collect(),
        )
    }

    pub fn is_square(&self) -> bool {
        self.0.iter().all(|r| r.len() == self.rows())
    }
}

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> Result<i64> {
    let n = m.rows();
    if !m.is_square() {
        return Err(CdpError::Degenerate("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(CdpError::Overflow)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| CdpError::Overflow)
}

fn minor(m: &IntMatrix, skip_r: usize, skip_c: usize) -> IntMatrix {
    IntMatrix(
        m.0.iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_r)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip_c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect(),
    )
}

/// Integer inverse of a matrix with determinant ±1, via the adjugate.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let d = det(m)?;
    if d.abs() != 1 {
        return Err(CdpError::NotUnimodular(d.to_string()));
    }
    let n = m.rows();
    if n == 1 {
        return Ok(IntMatrix(vec![vec![d]]));
    }
    let mut inv = vec![vec![0i64; n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let c = det(&minor(m, j, i))?;
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            *x = s * c * d;
        }
    }
    Ok(IntMatrix(inv))
}

/// For a nonsingular square `m`, the unique unimodular `u` such that `u * m`
/// is in row Hermite normal form: upper triangular, positive diagonal, and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf_transform(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = m.rows();
    if !m.is_square() {
        return Err(CdpError::Degenerate("Hermite form needs a square matrix".into()));
    }
    let mut h: Vec<Vec<i128>> = m.0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let combine = |rows: &mut Vec<Vec<i128>>, i: usize, k: usize, a: i128, b: i128, c: i128, d: i128| -> Result<()> {
        // (row_i, row_k) <- (a row_i + b row_k, c row_i + d row_k)
        for j in 0..rows[i].len() {
            let (x, y) = (rows[i][j], rows[k][j]);
            let nx = a.checked_mul(x).and_then(|p| p.checked_add(b.checked_mul(y)?));
            let ny = c.checked_mul(x).and_then(|p| p.checked_add(d.checked_mul(y)?));
            rows[i][j] = nx.ok_or(CdpError::Overflow)?;
            rows[k][j] = ny.ok_or(CdpError::Overflow)?;
        }
        Ok(())
    };
    for col in 0..n {
        for k in col + 1..n {
            if h[k][col] == 0 {
                continue;
            }
            let (x, y) = (h[col][col], h[k][col]);
            let (g, s, t) = ext_gcd(x, y);
            // [s t; -y/g x/g] has determinant 1
            let (c, d) = (-y / g, x / g);
            combine(&mut h, col, k, s, t, c, d)?;
            combine(&mut u, col, k, s, t, c, d)?;
        }
        if h[col][col] == 0 {
            return Err(CdpError::Degenerate("singular matrix has no unimodular Hermite transform".into()));
        }
        if h[col][col] < 0 {
            for row in [&mut h[col], &mut u[col]] {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
        let p = h[col][col];
        for i in 0..col {
            let q = h[i][col].div_euclid(p);
            if q != 0 {
                combine(&mut h, i, col, 1, -q, 0, 1)?;
                combine(&mut u, i, col, 1, -q, 0, 1)?;
            }
        }
    }
    let back = |a: Vec<Vec<i128>>| -> Result<IntMatrix> {
        a.into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| CdpError::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()
            .map(IntMatrix)
    };
    Ok((back(u)?, back(h)?))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `x -> matrix * x + translation` with `|det matrix| = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap")]
pub struct UnimodularAffineMap {
    matrix: IntMatrix,
    translation: LatticeVector,
}

#[derive(Deserialize)]
struct RawMap {
    matrix: IntMatrix,
    translation: LatticeVector,
}

impl TryFrom<RawMap> for UnimodularAffineMap {
    type Error = CdpError;
    fn try_from(raw: RawMap) -> Result<Self> {
        UnimodularAffineMap::new(raw.matrix, raw.translation)
    }
}

impl UnimodularAffineMap {
    pub fn new(matrix: IntMatrix, translation: LatticeVector) -> Result<Self> {
        let d = translation.dim();
        if matrix.rows() != d || !matrix.is_square() {
            return Err(CdpError::DimensionMismatch { expected: d, found: matrix.rows() });
        }
        let det = det(&matrix)?;
        if det.abs() != 1 {
            return Err(CdpError::NotUnimodular(det.to_string()));
        }
        Ok(UnimodularAffineMap { matrix, translation })
    }

    pub fn identity(d: usize) -> Self {
        UnimodularAffineMap { matrix: IntMatrix::identity(d), translation: LatticeVector::zero(d) }
    }

    pub fn linear(matrix: IntMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, LatticeVector::zero(d))
    }

    pub fn translation_by(t: LatticeVector) -> Self {
        UnimodularAffineMap { matrix: IntMatrix::identity(t.dim()), translation: t }
    }

    /// `x -> -x`.
    pub fn reflection(d: usize) -> Self {
        let mut m = IntMatrix::identity(d);
        for (i, row) in m.0.iter_mut().enumerate() {
            row[i] = -1;
        }
        UnimodularAffineMap { matrix: m, translation: LatticeVector::zero(d) }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &LatticeVector {
        &self.translation
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector(self.matrix.mul_vec(&x.0)).add(&self.translation)
    }

    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix
            .mul_vec_rat(x)
            .into_iter()
            .zip(&self.translation.0)
            .map(|(y, &b)| y + b)
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularAffineMap) -> UnimodularAffineMap {
        UnimodularAffineMap {
            matrix: self.matrix.mul(&other.matrix),
            translation: self.apply(&other.translation),
        }
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let inv = inverse_unimodular(&self.matrix).expect("matrix is unimodular by construction");
        let t = LatticeVector(inv.mul_vec(&self.translation.0)).neg();
        UnimodularAffineMap { matrix: inv, translation: t }
    }

    /// Image of a linear functional: the `n'` with `<n', A x> = <n, x>`.
    pub fn dual_linear(&self) -> IntMatrix {
        inverse_unimodular(&self.matrix).expect("matrix is unimodular by construction").transpose()
    }
}
