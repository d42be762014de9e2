//! Classification of two-dimensional non-toric Fano CDPs, i.e. normalized
//! CDPs over segments `[-1, m-1]`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{enumerate_fixed_base, m_range, solve_branch_equation, EnumerationError, EnumerationOptions, Role};
use crate::cdp::Cdp;
use crate::equiv::CanonicalCode;
use crate::fano::FanoCertificate;
use crate::lattice::{LatticePolytope, LatticeVector};
use crate::plfunction::PlFunction;
use crate::rat::Rat;

/// `(m, n)` cells holding all classes: base `[-1, m-1]`, `n` functions.
pub const CLASSIFICATION_CELLS: [(i64, usize); 5] = [(2, 3), (2, 4), (3, 3), (4, 3), (6, 3)];

/// Necessary conditions on normalized translated functions over `[-1, m-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralPruning {
    pub m: i64,
}

impl StructuralPruning {
    pub fn admits(&self, role: Role, f: &PlFunction) -> bool {
        let m = self.m;
        let at = |x: i64| f.eval_lattice_unchecked(&LatticeVector(vec![x]));
        let (left, right) = (at(-1), at(1));
        let (zero, one) = (Rat::zero(), Rat::one());
        if left > zero && right > zero {
            return false;
        }
        match role {
            Role::First => {
                if right > one {
                    return false;
                }
            }
            Role::Last => {
                if left <= -&one || right < -&one || (m > 2 && right == -&one) {
                    return false;
                }
                if m > 2 && (left > one || right > one) {
                    return false;
                }
            }
        }
        if m <= 2 {
            return true;
        }
        let vertices: Vec<(i64, i64)> = f.graph_vertices().iter().map(|v| (v.0[0], v.0[1])).collect();
        if at(0) == one {
            return vertices.iter().all(|&(x, _)| x == -1 || x == m - 1 || x == 0);
        }
        if role == Role::Last {
            return true;
        }
        // a line of slope 1/λ with λ | m, or rising at that slope to 1 and flat after
        match vertices.as_slice() {
            [(-1, 0), (x, 1), (r, 1)] if *r == m - 1 => 1 < x + 1 && x + 1 < m,
            [(-1, 0), (r, y)] if *r == m - 1 => *y > 0 && m % y == 0 && m / y > 1,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub max_nodes: u64,
    pub pruning: bool,
    /// Largest `m` swept by the branch solver.
    pub m_cap: i64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_nodes: 10_000_000, pruning: true, m_cap: 50 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub m: i64,
    pub n: usize,
    pub code: CanonicalCode,
    pub cdp: Cdp,
    pub certificate: FanoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub classes: Vec<ClassEntry>,
    /// Keyed `"m,n"`.
    pub breakdown: BTreeMap<String, usize>,
}

impl ClassificationResult {
    pub fn count(&self, m: i64, n: usize) -> usize {
        self.breakdown.get(&format!("{m},{n}")).copied().unwrap_or(0)
    }
}

/// Enumerates every cell and checks that the branch solver agrees with the
/// cells' values of `m > 2`.
pub fn classify_2d(opts: &ClassifyOptions) -> Result<ClassificationResult, EnumerationError> {
    let solved = m_range(&solve_branch_equation(opts.m_cap));
    let cells: BTreeSet<i64> = CLASSIFICATION_CELLS.iter().map(|c| c.0).filter(|&m| m > 2).collect();
    if solved != cells {
        return Err(EnumerationError::Inconsistent(format!(
            "branch solver gives m in {solved:?}, classification cells use {cells:?}"
        )));
    }
    let mut classes = Vec::new();
    let mut breakdown = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for &(m, n) in &CLASSIFICATION_CELLS {
        let base = LatticePolytope::interval(-1, m - 1)?;
        let eo = EnumerationOptions {
            max_nodes: opts.max_nodes,
            pruning: opts.pruning.then_some(StructuralPruning { m }),
            ..Default::default()
        };
        let found = enumerate_fixed_base(&base, n, &eo)?;
        breakdown.insert(format!("{m},{n}"), found.classes.len());
        for f in found.classes {
            if !seen.insert(f.code.clone()) {
                return Err(EnumerationError::Inconsistent(format!("code {} found in two cells", f.code)));
            }
            classes.push(ClassEntry { m, n, code: f.code, cdp: f.cdp, certificate: f.certificate });
        }
    }
    Ok(ClassificationResult { classes, breakdown })
}
