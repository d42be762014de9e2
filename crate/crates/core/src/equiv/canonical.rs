//! A byte string that is equal for two Fano CDPs exactly when they are
//! equivalent.
//!
//! The code is the least encoding over every way of presenting the CDP in a
//! fixed normal position:
//!
//! 1. any certified origin moves to zero and the functions are replaced by
//!    their translated versions, which removes the translation freedom;
//! 2. integral-affine functions are dropped and their linear parts are kept
//!    as a total that must be absorbed somewhere;
//! 3. the base is put in position by the unimodular map bringing some ordered
//!    tuple of `d` independent vertices to Hermite normal form, keeping the maps
//!    that give the least vertex list (every lattice automorphism of the
//!    least position is among them, so this step loses nothing);
//! 4. each function but one is sheared so that its reference piece, extended
//!    affinely, takes values in `[0, 1)` at `-e_1, ..., -e_d`; the remaining
//!    function absorbs the opposite shear, and every choice of it is tried;
//! 5. the function encodings are sorted, which removes the order.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cdp::Cdp;
use crate::error::{CdpError, Result};
use crate::fano::{all_certificates, translated_unchecked, verify_certificate, FanoCertificate};
use crate::lattice::{det, hnf_transform, IntMatrix, LatticePolytope, LatticeVector, UnimodularAffineMap};
use crate::plfunction::PlFunction;
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if !s.len().is_multiple_of(2) {
            return Err(CdpError::Parse("odd-length hex code".into()));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|e| CdpError::Parse(e.to_string())))
            .collect::<Result<Vec<u8>>>()
            .map(CanonicalCode)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Order-preserving byte form of integers: sign bit flipped, big-endian.
fn push_i64(out: &mut Vec<u8>, x: i64) {
    out.extend_from_slice(&((x as u64) ^ (1 << 63)).to_be_bytes());
}

fn push_len(out: &mut Vec<u8>, n: usize) {
    out.extend_from_slice(&(n as u32).to_be_bytes());
}

fn encode_points(out: &mut Vec<u8>, pts: &[LatticeVector]) {
    push_len(out, pts.len());
    for p in pts {
        for &x in &p.0 {
            push_i64(out, x);
        }
    }
}

/// Code of a CDP given one of its certificates; all certified origins are
/// used, the given one only proves the input is Fano.
pub fn canonical_code(c: &Cdp, cert: &FanoCertificate) -> Result<CanonicalCode> {
    verify_certificate(c, cert)?;
    canonical_code_any(c)
}

/// Code of a CDP, searching certificates itself.
pub fn canonical_code_any(c: &Cdp) -> Result<CanonicalCode> {
    let certs = all_certificates(c);
    if certs.is_empty() {
        return Err(CdpError::NotFano("no interior lattice point certifies the CDP".into()));
    }
    let d = c.dim();
    let mut best_key: Option<Vec<LatticeVector>> = None;
    let mut placements: Vec<(usize, IntMatrix)> = Vec::new();
    let mut centered = Vec::with_capacity(certs.len());
    for (ci, cert) in certs.iter().enumerate() {
        let t = translated_unchecked(c, cert);
        for (key, u) in base_positions(&t.base)? {
            match best_key.as_ref().map(|b| key.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => continue,
                Some(std::cmp::Ordering::Less) | None => {
                    best_key = Some(key);
                    placements.clear();
                }
                Some(std::cmp::Ordering::Equal) => {}
            }
            if !placements.iter().any(|(i, m)| *i == ci && *m == u) {
                placements.push((ci, u));
            }
        }
        centered.push(t);
    }
    let key = best_key.expect("a full-dimensional base has independent vertices");
    let mut prefix = Vec::new();
    push_len(&mut prefix, d);
    encode_points(&mut prefix, &key);

    let mut best: Option<Vec<u8>> = None;
    for (ci, u) in placements {
        let t = &centered[ci];
        let phi = UnimodularAffineMap::linear(u)?;
        let base = Arc::new(t.base.map(&phi));
        let dual = phi.dual_linear();
        let mut total = vec![0i64; d];
        let mut essential = Vec::new();
        for f in &t.functions {
            if f.is_integral_affine() {
                let g: Vec<i64> = f.pieces()[0].gradient.iter().map(|x| x.to_i64().ok_or(CdpError::Overflow)).collect::<Result<_>>()?;
                for (s, x) in total.iter_mut().zip(dual.mul_vec(&g)) {
                    *s += x;
                }
            } else {
                essential.push(f.map_base(&phi, base.clone()));
            }
        }
        let code = best_shear_code(&prefix, &essential, &total)?;
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    Ok(CanonicalCode(best.expect("at least one placement")))
}

/// Every Hermite position of a base containing the origin in its interior:
/// for each ordered tuple of `d` independent vertices, the unique unimodular
/// `u` bringing the tuple to Hermite form, with the sorted image of all vertices.
fn base_positions(b: &LatticePolytope) -> Result<Vec<(Vec<LatticeVector>, IntMatrix)>> {
    let d = b.dim();
    let mut out = Vec::new();
    for tuple in b.vertices().iter().permutations(d) {
        let cols: Vec<LatticeVector> = tuple.into_iter().cloned().collect();
        let m = IntMatrix::from_columns(&cols);
        if det(&m)? == 0 {
            continue;
        }
        let (u, _) = hnf_transform(&m)?;
        let mut key: Vec<LatticeVector> = b.vertices().iter().map(|v| LatticeVector(u.mul_vec(&v.0))).collect();
        key.sort();
        out.push((key, u));
    }
    Ok(out)
}

/// Shear taking the reference piece of `f` into the fundamental domain, and
/// the sheared function.
pub(crate) fn reduce_shear(f: &PlFunction) -> Result<(Vec<i64>, PlFunction)> {
    let d = f.dim();
    let zero_r = vec![Rat::zero(); d];
    let value = f.eval_unchecked(&zero_r);
    let reference = f
        .pieces()
        .iter()
        .filter(|p| p.region.contains(&zero_r))
        .map(|p| &p.gradient)
        .max()
        .expect("the origin lies in some region");
    let w: Vec<i64> = reference
        .iter()
        .map(|g| (&value - g).floor_i64().ok_or(CdpError::Overflow))
        .collect::<Result<_>>()?;
    let h = f.add_affine(&LatticeVector(w.clone()), 0);
    Ok((w, h))
}

fn best_shear_code(prefix: &[u8], functions: &[PlFunction], total: &[i64]) -> Result<Vec<u8>> {
    let reduced: Vec<(Vec<i64>, PlFunction)> = functions.iter().map(reduce_shear).collect::<Result<_>>()?;
    let sum_w: Vec<i64> = (0..total.len()).map(|k| reduced.iter().map(|(w, _)| w[k]).sum()).collect();
    let encodings: Vec<Vec<u8>> = reduced
        .iter()
        .map(|(_, h)| {
            let mut e = Vec::new();
            encode_points(&mut e, h.graph_vertices());
            e
        })
        .collect();
    let mut best: Option<Vec<u8>> = None;
    for j in 0..functions.len().max(1) {
        let mut parts = encodings.clone();
        if !functions.is_empty() {
            // f_j plus the total minus every other function's shear
            let w: Vec<i64> = (0..total.len()).map(|k| total[k] - (sum_w[k] - reduced[j].0[k])).collect();
            let g = functions[j].add_affine(&LatticeVector(w), 0);
            parts[j].clear();
            encode_points(&mut parts[j], g.graph_vertices());
        }
        parts.sort();
        let mut code = prefix.to_vec();
        push_len(&mut code, parts.len());
        for p in &parts {
            code.extend_from_slice(p);
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    Ok(best.expect("at least one choice"))
}

/// Both CDPs are Fano and have the same code.
pub fn equivalent(a: &Cdp, b: &Cdp) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(canonical_code_any(a)? == canonical_code_any(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{apply_move, Move};
    use crate::fano::{find_certificate, polytope_to_cdp};

    fn cdp(a: i64, b: i64, supports: &[&[&[i64]]]) -> Cdp {
        let s: Vec<Vec<Vec<i64>>> = supports.iter().map(|f| f.iter().map(|p| p.to_vec()).collect()).collect();
        Cdp::from_supports(LatticePolytope::interval(a, b).unwrap(), &s).unwrap()
    }

    fn polygon(pts: &[[i64; 2]]) -> LatticePolytope {
        LatticePolytope::new(&pts.iter().map(|p| LatticeVector(p.to_vec())).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hex_round_trip() {
        let c = cdp(-1, 1, &[&[&[-1, 0], &[1, 1]], &[&[-1, 0], &[1, 1]], &[&[-1, 0], &[1, -1]]]);
        let code = canonical_code(&c, &find_certificate(&c).unwrap()).unwrap();
        assert_eq!(CanonicalCode::from_hex(&code.to_hex()).unwrap(), code);
        let json = serde_json::to_string(&code).unwrap();
        assert_eq!(serde_json::from_str::<CanonicalCode>(&json).unwrap(), code);
    }

    #[test]
    fn equivalence_figure_ends_agree() {
        let left = cdp(-1, 1, &[&[&[-1, 0], &[0, 1], &[1, 0]], &[&[-1, 0], &[1, 1]]]);
        let right = cdp(-1, 1, &[&[&[-1, 2], &[0, 2], &[1, 0]], &[&[-1, -1], &[1, 0]]]);
        assert!(equivalent(&left, &right).unwrap());
    }

    #[test]
    fn sheared_polytopes_give_distinct_codes() {
        let ps = [
            polygon(&[[-1, 0], [0, 1], [1, 0], [1, -1]]),
            polygon(&[[-1, 0], [-1, 1], [1, 0], [2, -1]]),
            polygon(&[[-2, 1], [1, 0], [3, -1], [-1, 0]]),
        ];
        let codes: Vec<CanonicalCode> =
            ps.iter().map(|p| canonical_code_any(&polytope_to_cdp(p).unwrap()).unwrap()).collect();
        assert_ne!(codes[0], codes[1]);
        assert_ne!(codes[0], codes[2]);
        assert_ne!(codes[1], codes[2]);
    }

    #[test]
    fn zero_function_and_permutation_do_not_change_the_code() {
        let c = cdp(-1, 1, &[&[&[-1, 0], &[1, 1]], &[&[-1, 0], &[0, 1], &[1, 0]], &[&[-1, 0], &[1, -1]]]);
        let base = canonical_code_any(&c).unwrap();
        let z = apply_move(&c, &Move::AddZero).unwrap();
        let z = apply_move(&z, &Move::Permute { sigma: vec![3, 1, 0, 2] }).unwrap();
        let z = apply_move(&z, &Move::Shear { v: LatticeVector(vec![1]), beta: vec![2, -1, 0, -1] }).unwrap();
        assert_eq!(canonical_code_any(&z).unwrap(), base);
    }

    #[test]
    fn non_fano_has_no_code() {
        let c = cdp(-1, 1, &[&[&[-1, 4], &[1, 6]], &[&[-1, 6], &[1, 4]]]);
        assert!(canonical_code_any(&c).is_err());
    }
}
