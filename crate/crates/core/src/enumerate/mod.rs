//! Enumeration of normalized Fano CDPs over a fixed base, the classification
//! of two-dimensional ones, and the Diophantine branch solver behind it.
//!
//! The search works with translated functions `Ψ'_i` around the origin. The
//! first `n - 1` functions are taken in shear normal form (their reference
//! piece takes values in `[0, 1)` at `-e_1, ..., -e_d`), the last one absorbs
//! the opposite shear. Every lattice point gets exact value bounds:
//!
//! * `Ψ'_i(u) <= max(0, 1 + Σ u_k) + Σ max(0, -u_k)` for `i < n`, since the
//!   reference piece dominates the function and `0 < Ψ'_i(0) <= 1`;
//! * `Ψ'_n >= n - 2 - (n - 1) U` from `Σ Ψ' >= n - 2`;
//! * `Ψ'_n(u) <= ((1 + α) Ψ'_n(0) - Ψ'_n(-α u)) / α` by concavity along the
//!   line through `u` and the origin, minimised over the admissible `α`;
//! * `Ψ'_i >= n - 2 - (n - 2) U - U_n` for `i < n`.
//!
//! Candidates are enumerated per function within these bounds, and tuples
//! are assembled with the sum inequality as an incremental cut.

mod classify;
mod diophantine;
mod generic;
mod interval;

pub use classify::{classify_2d, ClassEntry, ClassificationResult, ClassifyOptions, StructuralPruning, CLASSIFICATION_CELLS};
pub use diophantine::{
    m_range, solve_branch, solve_branch_equation, worked_branch_solutions, Branch, BranchReport, BranchSolution,
    EndpointFamily, FamilyParam,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cdp::Cdp;
use crate::equiv::{canonical_code_any, reduce_shear, CanonicalCode};
use crate::error::{CdpError, Result};
use crate::fano::{c_of_box, certificate_at, FanoCertificate};
use crate::lattice::{content, find_orth_basis, LatticePolytope, LatticeVector, OrthBasis};
use crate::plfunction::PlFunction;
use crate::rat::Rat;

/// Exact value bounds for the translated functions at every lattice point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub n: usize,
    pub points: Vec<LatticeVector>,
    /// Bounds for the first `n - 1` functions.
    pub lower: Vec<Rat>,
    pub upper: Vec<Rat>,
    /// Bounds for the last function.
    pub last_lower: Vec<Rat>,
    pub last_upper: Vec<Rat>,
}

fn normal_form_upper(u: &[Rat]) -> Rat {
    let s: Rat = u.iter().cloned().sum();
    let mut v = (s + 1).max(Rat::zero());
    for x in u {
        if x.is_negative() {
            v -= x;
        }
    }
    v
}

impl EnumerationBudget {
    pub fn new(base: &LatticePolytope, n: usize) -> Result<Self> {
        base.require_origin_interior()?;
        if n == 0 {
            return Err(CdpError::InvalidCdp("a CDP needs at least one function".into()));
        }
        let nn = Rat::from(n as i64);
        let n2 = Rat::from(n as i64 - 2);
        let last_lower_at = |u: &[Rat]| &n2 - &((&nn - 1) * normal_form_upper(u));
        let points = base.lattice_points();
        let mut lower = Vec::with_capacity(points.len());
        let mut upper = Vec::with_capacity(points.len());
        let mut last_lower = Vec::with_capacity(points.len());
        let mut last_upper = Vec::with_capacity(points.len());
        for p in &points {
            let u = p.to_rat();
            let up = normal_form_upper(&u);
            let ln = last_lower_at(&u);
            let un = if p.is_zero() {
                Rat::one()
            } else {
                let g = content(&p.0);
                let back: Vec<Rat> = u.iter().map(|x| -x).collect();
                let amax = base.ray_max(&back).expect("bounded base");
                let mut alphas = vec![amax.clone()];
                let mut k = 1;
                loop {
                    let a = Rat::new(k, g);
                    if a > amax {
                        break;
                    }
                    alphas.push(a);
                    k += 1;
                }
                alphas
                    .into_iter()
                    .map(|a| {
                        let q: Vec<Rat> = back.iter().map(|x| x * &a).collect();
                        (&a + 1 - last_lower_at(&q)) / &a
                    })
                    .min()
                    .expect("at least one alpha")
            };
            lower.push(&n2 - &((&nn - 2) * &up) - &un);
            upper.push(up);
            last_lower.push(ln);
            last_upper.push(un);
        }
        Ok(EnumerationBudget { n, points, lower, upper, last_lower, last_upper })
    }

    pub(crate) fn bounds(&self, role: Role) -> (&[Rat], &[Rat]) {
        match role {
            Role::First => (&self.lower, &self.upper),
            Role::Last => (&self.last_lower, &self.last_upper),
        }
    }
}

/// Which slot a candidate function is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// One of the first `n - 1` functions, in shear normal form.
    First,
    /// The last function, carrying the compensating shear.
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Vertex-sequence search on segments, the generic search otherwise.
    #[default]
    Auto,
    /// Assign values at every lattice point and take upper hulls. Exponential;
    /// meant for small bases and cross-checks.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationOptions {
    pub max_nodes: u64,
    pub strategy: Strategy,
    /// Extra necessary conditions valid for two-dimensional CDPs over `[-1, m-1]`.
    pub pruning: Option<StructuralPruning>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_nodes: 10_000_000, strategy: Strategy::Auto, pruning: None }
    }
}

/// One equivalence class found by the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundCdp {
    pub code: CanonicalCode,
    pub cdp: Cdp,
    pub certificate: FanoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    /// Sorted by code.
    pub classes: Vec<FoundCdp>,
    pub nodes: u64,
    pub first_candidates: usize,
    pub last_candidates: usize,
    /// Theorem-level cap on `n` for this base; the search is skipped above it.
    pub cap: Rat,
}

#[derive(Debug, thiserror::Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Cdp(#[from] CdpError),
    #[error("{0}")]
    Inconsistent(String),
    #[error("node limit {limit} reached while {frontier}; {} classes found so far", partial.len())]
    NodeLimit { limit: u64, frontier: String, partial: Vec<FoundCdp> },
}

pub(crate) struct Counter {
    pub nodes: u64,
    pub limit: u64,
}

impl Counter {
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.limit
    }
}

pub(crate) struct Candidate {
    pub f: PlFunction,
    pub values: Vec<Rat>,
}

/// Smallest `c(□)` over the standard basis and, in the plane, the basis from
/// the orthant search.
pub fn function_cap(base: &LatticePolytope) -> Result<Rat> {
    let d = base.dim();
    let standard: Vec<LatticeVector> = (0..d).map(|k| LatticeVector::unit(d, k)).collect();
    let mut cap = c_of_box(base, &standard)?;
    if d == 2 {
        match find_orth_basis(base)? {
            OrthBasis::CrossEquivalence { .. } => cap = cap.min(Rat::from(8)),
            OrthBasis::Basis { e1, e2, .. } => cap = cap.min(c_of_box(base, &[e1, e2])?),
        }
    }
    Ok(cap)
}

fn keep(f: &PlFunction, role: Role, pruning: Option<&StructuralPruning>) -> Result<bool> {
    if f.is_integral_affine() {
        return Ok(false);
    }
    if role == Role::First && reduce_shear(f)?.0.iter().any(|&w| w != 0) {
        return Ok(false);
    }
    Ok(pruning.is_none_or(|p| p.admits(role, f)))
}

fn candidates(
    base: &Arc<LatticePolytope>,
    budget: &EnumerationBudget,
    role: Role,
    opts: &EnumerationOptions,
    counter: &mut Counter,
) -> std::result::Result<Vec<Candidate>, EnumerationError> {
    let raw = if base.dim() == 1 && opts.strategy == Strategy::Auto {
        interval::candidates(base, budget, role, counter)?
    } else {
        generic::candidates(base, budget, role, counter)?
    };
    let raw = raw.ok_or_else(|| EnumerationError::NodeLimit {
        limit: counter.limit,
        frontier: format!("listing candidates for the {role:?} role"),
        partial: Vec::new(),
    })?;
    let mut out = Vec::new();
    for f in raw {
        if keep(&f, role, opts.pruning.as_ref())? {
            let values = budget.points.iter().map(|p| f.eval_lattice_unchecked(p)).collect();
            out.push(Candidate { f, values });
        }
    }
    Ok(out)
}

/// All normalized Fano CDPs with base `base` (origin interior and used as the
/// certificate origin) and exactly `n` functions, none of them integral-affine,
/// one per equivalence class. These are exactly the non-toric ones, so `n < 3`
/// gives nothing.
pub fn enumerate_fixed_base(
    base: &LatticePolytope,
    n: usize,
    opts: &EnumerationOptions,
) -> std::result::Result<Enumeration, EnumerationError> {
    let budget = EnumerationBudget::new(base, n)?;
    let cap = function_cap(base)?;
    let base = Arc::new(base.clone());
    // with at most two functions that are not integral-affine the CDP is toric
    if n < 3 || Rat::from(n as i64) > cap {
        return Ok(Enumeration { classes: Vec::new(), nodes: 0, first_candidates: 0, last_candidates: 0, cap });
    }
    let mut counter = Counter { nodes: 0, limit: opts.max_nodes };
    let first = candidates(&base, &budget, Role::First, opts, &mut counter)?;
    let last = candidates(&base, &budget, Role::Last, opts, &mut counter)?;

    let target = Rat::from(n as i64 - 2);
    let interior: Vec<bool> = budget.points.iter().map(|p| base.is_interior_lattice(p)).collect();
    let k = budget.points.len();
    // suffix maxima of the first candidates, and the maximum of the last ones
    let mut suffix_max: Vec<Vec<Rat>> = vec![Vec::new(); first.len() + 1];
    for i in (0..first.len()).rev() {
        suffix_max[i] = (0..k)
            .map(|p| match suffix_max[i + 1].get(p) {
                Some(m) => m.clone().max(first[i].values[p].clone()),
                None => first[i].values[p].clone(),
            })
            .collect();
    }
    let last_max: Vec<Option<Rat>> = (0..k).map(|p| last.iter().map(|c| c.values[p].clone()).max()).collect();
    if last_max.iter().any(Option::is_none) {
        return Ok(Enumeration {
            classes: Vec::new(),
            nodes: counter.nodes,
            first_candidates: first.len(),
            last_candidates: 0,
            cap,
        });
    }
    let feasible = |sum: &Rat, p: usize| if interior[p] { *sum > target } else { *sum >= target };

    // depth-first over nondecreasing index tuples of the first candidates
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<Rat>)> = vec![(Vec::new(), vec![Rat::zero(); k])];
    while let Some((chosen, sums)) = stack.pop() {
        if !counter.tick() {
            return Err(EnumerationError::NodeLimit {
                limit: counter.limit,
                frontier: format!("assembling tuples at prefix {chosen:?}"),
                partial: Vec::new(),
            });
        }
        let left = n - 1 - chosen.len();
        if left == 0 {
            for (li, lc) in last.iter().enumerate() {
                if (0..k).all(|p| feasible(&(&sums[p] + &lc.values[p]), p)) {
                    let mut t = chosen.clone();
                    t.push(li);
                    tuples.push(t);
                }
            }
            continue;
        }
        let start = chosen.last().copied().unwrap_or(0);
        for i in (start..first.len()).rev() {
            let next: Vec<Rat> = (0..k).map(|p| &sums[p] + &first[i].values[p]).collect();
            let ok = (0..k).all(|p| {
                let rest = Rat::from(left as i64 - 1) * &suffix_max[i][p];
                let best = &next[p] + &rest + last_max[p].as_ref().unwrap();
                feasible(&best, p)
            });
            if ok {
                let mut t = chosen.clone();
                t.push(i);
                stack.push((t, next));
            }
        }
    }
    counter.nodes += tuples.len() as u64;
    if counter.nodes > counter.limit {
        return Err(EnumerationError::NodeLimit {
            limit: counter.limit,
            frontier: format!("certifying {} candidate tuples", tuples.len()),
            partial: Vec::new(),
        });
    }

    let shift = n as i64 - 2;
    let found: Vec<Option<FoundCdp>> = tuples
        .par_iter()
        .map(|t| -> Result<Option<FoundCdp>> {
            let mut fs: Vec<PlFunction> = t[..n - 1].iter().map(|&i| first[i].f.clone()).collect();
            fs.push(last[t[n - 1]].f.add_constant(-shift));
            let Ok(c) = Cdp::new(base.clone(), fs) else { return Ok(None) };
            let Ok(certificate) = certificate_at(&c, &LatticeVector::zero(base.dim())) else { return Ok(None) };
            let code = canonical_code_any(&c)?;
            Ok(Some(FoundCdp { code, cdp: c, certificate }))
        })
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<CanonicalCode, FoundCdp> = BTreeMap::new();
    for f in found.into_iter().flatten() {
        classes.entry(f.code.clone()).or_insert(f);
    }
    Ok(Enumeration {
        classes: classes.into_values().collect(),
        nodes: counter.nodes,
        first_candidates: first.len(),
        last_candidates: last.len(),
        cap,
    })
}
