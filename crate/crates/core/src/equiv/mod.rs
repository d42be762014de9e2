//! Equivalence moves, normalization, toric detection and canonical codes.

mod canonical;
mod normalize;

pub use canonical::{canonical_code, canonical_code_any, equivalent, CanonicalCode};
pub(crate) use canonical::reduce_shear;
pub use normalize::{essential_functions, is_toric, normalize, Normalized};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cdp::Cdp;
use crate::error::{CdpError, Result};
use crate::lattice::{LatticeVector, UnimodularAffineMap};
use crate::plfunction::PlFunction;

/// One elementary equivalence of CDPs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Appends the zero function.
    AddZero,
    /// Drops a function that vanishes identically.
    RemoveZero { index: usize },
    /// `new[i] = old[sigma[i]]`, 0-based.
    Permute { sigma: Vec<usize> },
    /// Base `φ(□)` with functions `Ψ_i ∘ φ^{-1}`.
    TransformBase { map: UnimodularAffineMap },
    /// `Ψ_i + α_i` with `Σ α_i = 0`.
    Translate {
        #[serde(with = "crate::lattice::json_ints")]
        alpha: Vec<i64>,
    },
    /// `Ψ_i + β_i <v, u>` with `Σ β_i = 0`.
    Shear {
        v: LatticeVector,
        #[serde(with = "crate::lattice::json_ints")]
        beta: Vec<i64>,
    },
}

fn check_len(what: &str, len: usize, n: usize) -> Result<()> {
    if len != n {
        return Err(CdpError::InvalidMove(format!("{what} has {len} entries for {n} functions")));
    }
    Ok(())
}

fn check_zero_sum(what: &str, xs: &[i64]) -> Result<()> {
    let s: i128 = xs.iter().map(|&x| x as i128).sum();
    if s != 0 {
        return Err(CdpError::InvalidMove(format!("{what} sums to {s}, not 0")));
    }
    Ok(())
}

fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma.iter().all(|&s| s < seen.len() && !std::mem::replace(&mut seen[s], true))
}

/// Applies one move. Sums change only by an affine function vanishing
/// identically, so positivity is preserved and not re-checked.
pub fn apply_move(c: &Cdp, m: &Move) -> Result<Cdp> {
    let n = c.n();
    let d = c.dim();
    match m {
        Move::AddZero => {
            let mut fs = c.functions().to_vec();
            fs.push(PlFunction::constant(c.base().clone(), 0)?);
            Cdp::new_unchecked(c.base().clone(), fs)
        }
        Move::RemoveZero { index } => {
            if *index >= n {
                return Err(CdpError::InvalidMove(format!("no function {index} among {n}")));
            }
            if n == 1 {
                return Err(CdpError::InvalidMove("cannot remove the only function".into()));
            }
            if !c.functions()[*index].is_identically_zero() {
                return Err(CdpError::InvalidMove(format!("function {index} is not identically zero")));
            }
            let mut fs = c.functions().to_vec();
            fs.remove(*index);
            Cdp::new_unchecked(c.base().clone(), fs)
        }
        Move::Permute { sigma } => {
            check_len("permutation", sigma.len(), n)?;
            if !is_permutation(sigma) {
                return Err(CdpError::InvalidMove(format!("{sigma:?} is not a permutation")));
            }
            let fs = sigma.iter().map(|&s| c.functions()[s].clone()).collect();
            Cdp::new_unchecked(c.base().clone(), fs)
        }
        Move::TransformBase { map } => {
            if map.dim() != d {
                return Err(CdpError::DimensionMismatch { expected: d, found: map.dim() });
            }
            let base = Arc::new(c.base().map(map));
            let fs = c.functions().iter().map(|f| f.map_base(map, base.clone())).collect();
            Cdp::new_unchecked(base, fs)
        }
        Move::Translate { alpha } => {
            check_len("translation", alpha.len(), n)?;
            check_zero_sum("translation", alpha)?;
            let fs = c.functions().iter().zip(alpha).map(|(f, &a)| f.add_constant(a)).collect();
            Cdp::new_unchecked(c.base().clone(), fs)
        }
        Move::Shear { v, beta } => {
            check_len("shear", beta.len(), n)?;
            check_zero_sum("shear", beta)?;
            if v.dim() != d {
                return Err(CdpError::DimensionMismatch { expected: d, found: v.dim() });
            }
            let fs = c.functions().iter().zip(beta).map(|(f, &b)| f.add_affine(&v.scale(b), 0)).collect();
            Cdp::new_unchecked(c.base().clone(), fs)
        }
    }
}

pub fn apply_moves<'a>(c: &Cdp, moves: impl IntoIterator<Item = &'a Move>) -> Result<Cdp> {
    let mut cur = c.clone();
    for m in moves {
        cur = apply_move(&cur, m)?;
    }
    Ok(cur)
}

impl Move {
    /// Moves undoing `self` when applied to a CDP with `n_before` functions.
    pub fn inverse(&self, n_before: usize) -> Result<Vec<Move>> {
        Ok(match self {
            Move::AddZero => vec![Move::RemoveZero { index: n_before }],
            Move::RemoveZero { index } => {
                if *index >= n_before {
                    return Err(CdpError::InvalidMove(format!("no function {index} among {n_before}")));
                }
                let last = n_before - 1;
                let sigma = (0..n_before)
                    .map(|k| match k.cmp(index) {
                        std::cmp::Ordering::Less => k,
                        std::cmp::Ordering::Equal => last,
                        std::cmp::Ordering::Greater => k - 1,
                    })
                    .collect();
                vec![Move::AddZero, Move::Permute { sigma }]
            }
            Move::Permute { sigma } => {
                if !is_permutation(sigma) {
                    return Err(CdpError::InvalidMove(format!("{sigma:?} is not a permutation")));
                }
                let mut inv = vec![0; sigma.len()];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s] = i;
                }
                vec![Move::Permute { sigma: inv }]
            }
            Move::TransformBase { map } => vec![Move::TransformBase { map: map.inverse() }],
            Move::Translate { alpha } => vec![Move::Translate { alpha: alpha.iter().map(|a| -a).collect() }],
            Move::Shear { v, beta } => vec![Move::Shear { v: v.clone(), beta: beta.iter().map(|b| -b).collect() }],
        })
    }
}
