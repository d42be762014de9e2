//! Endpoint equation for three functions over `[-1, m-1]`, `m > 2`:
//! `Ψ'_1(m-1) + Ψ'_2(m-1) + Ψ'_3(m-1) = 1`.
//!
//! The first two values come from the line family `m/λ` (`λ > 1`, `λ | m`)
//! or the integral family `1 - k(m-1)` (`k >= 0`); the third from the drop
//! `2 - m` or the tilted family `1 - μm/(μ+1)` (`μ >= 0`, `(μ+1) | m`).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointFamily {
    /// `m/λ`
    Line,
    /// `1 - k(m-1)`
    Integral,
    /// `2 - m`
    Drop,
    /// `1 - μm/(μ+1)`
    Tilted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyParam {
    Lambda(i64),
    K(i64),
    Fixed,
    Mu(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Branch {
    pub first: EndpointFamily,
    pub second: EndpointFamily,
    pub third: EndpointFamily,
}

impl Branch {
    /// The six unordered combinations.
    pub fn all() -> Vec<Branch> {
        use EndpointFamily::*;
        let mut out = Vec::new();
        for (a, b) in [(Line, Line), (Line, Integral), (Integral, Integral)] {
            for c in [Drop, Tilted] {
                out.push(Branch { first: a, second: b, third: c });
            }
        }
        out
    }

    /// Two lines with the tilted third value sum to an affine function whose
    /// total is identically one; the equation then reads
    /// `1/λ1 + 1/λ2 + 1/(μ+1) = 1` with `m` free, so it carries no
    /// information on `m`.
    pub fn admissible(&self) -> bool {
        use EndpointFamily::*;
        !(self.first == Line && self.second == Line && self.third == Tilted)
    }

    /// Largest `m` with a solution, from the divisor arguments:
    ///
    /// * line, line, drop: `1/λ1 + 1/λ2 + 1/m = 1`, so `m <= 6`;
    /// * line, integral, drop: `m/λ = m - 2 + k(m-1) <= m/2`, so `m <= 4`;
    /// * line, integral, tilted: with `ν = μ+1`, `k = 0` gives
    ///   `1/λ + 1/ν + 1/m = 1`, `k >= 1` gives `m/2 + 1 >= m - 1`; `m <= 6`;
    /// * integral, integral, drop: `3 - m = (k1+k2)(m-1)`, so `m = 3`;
    /// * integral, integral, tilted: `k1 + k2 = 0` forces `(m-2) | m`,
    ///   otherwise `m - 1 <= 2`; `m <= 4`.
    pub fn m_bound(&self) -> Option<i64> {
        use EndpointFamily::*;
        match (self.first, self.second, self.third) {
            (Line, Line, Drop) => Some(6),
            (Line, Integral, Drop) => Some(4),
            (Line, Integral, Tilted) => Some(6),
            (Integral, Integral, Drop) => Some(3),
            (Integral, Integral, Tilted) => Some(4),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        let c = |f: EndpointFamily| match f {
            EndpointFamily::Line => 'A',
            EndpointFamily::Integral => 'B',
            EndpointFamily::Drop => 'C',
            EndpointFamily::Tilted => 'D',
        };
        format!("{}{}+{}", c(self.first), c(self.second), c(self.third))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BranchSolution {
    pub m: i64,
    pub params: [FamilyParam; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub branch: Branch,
    pub admissible: bool,
    pub m_bound: Option<i64>,
    pub m_cap: i64,
    pub solutions: Vec<BranchSolution>,
}

fn divisors(m: i64) -> impl Iterator<Item = i64> {
    (1..=m).filter(move |d| m % d == 0)
}

fn values(family: EndpointFamily, m: i64) -> Vec<(FamilyParam, Rat)> {
    match family {
        EndpointFamily::Line => divisors(m).filter(|&l| l > 1).map(|l| (FamilyParam::Lambda(l), Rat::new(m, l))).collect(),
        // other values lie in [-m/2 - 1, 1 + m/2], so 1 - k(m-1) >= -m suffices
        EndpointFamily::Integral => (0..)
            .take_while(|k| 1 - k * (m - 1) >= -m)
            .map(|k| (FamilyParam::K(k), Rat::from(1 - k * (m - 1))))
            .collect(),
        EndpointFamily::Drop => vec![(FamilyParam::Fixed, Rat::from(2 - m))],
        EndpointFamily::Tilted => divisors(m).map(|nu| (FamilyParam::Mu(nu - 1), Rat::from(1) - Rat::new(m, nu) * (nu - 1))).collect(),
    }
}

/// Integer solutions with `3 <= m <= m_cap`. Inadmissible branches are
/// reported without solutions.
pub fn solve_branch(branch: Branch, m_cap: i64) -> BranchReport {
    let mut solutions = Vec::new();
    if branch.admissible() {
        let symmetric = branch.first == branch.second;
        for m in 3..=m_cap {
            let a = values(branch.first, m);
            let b = values(branch.second, m);
            let c = values(branch.third, m);
            for (i, (pa, va)) in a.iter().enumerate() {
                for (j, (pb, vb)) in b.iter().enumerate() {
                    if symmetric && j < i {
                        continue;
                    }
                    for (pc, vc) in &c {
                        if va + vb + vc == Rat::one() {
                            solutions.push(BranchSolution { m, params: [*pa, *pb, *pc] });
                        }
                    }
                }
            }
        }
    }
    BranchReport { branch, admissible: branch.admissible(), m_bound: branch.m_bound(), m_cap, solutions }
}

/// All six branches. Panics if a solution exceeds its branch's proved bound.
pub fn solve_branch_equation(m_cap: i64) -> Vec<BranchReport> {
    Branch::all()
        .into_iter()
        .map(|b| {
            let r = solve_branch(b, m_cap);
            if let Some(bound) = r.m_bound {
                assert!(r.solutions.iter().all(|s| s.m <= bound), "branch {} beyond its bound", b.label());
            }
            r
        })
        .collect()
}

/// `(m, λ1, λ2)` with `λ1 <= λ2` for two lines and the drop.
pub fn worked_branch_solutions(m_cap: i64) -> BTreeSet<(i64, i64, i64)> {
    use EndpointFamily::*;
    solve_branch(Branch { first: Line, second: Line, third: Drop }, m_cap)
        .solutions
        .into_iter()
        .filter_map(|s| match s.params {
            [FamilyParam::Lambda(a), FamilyParam::Lambda(b), _] => Some((s.m, a.min(b), a.max(b))),
            _ => None,
        })
        .collect()
}

/// Union of the `m` values over admissible branches.
pub fn m_range(reports: &[BranchReport]) -> BTreeSet<i64> {
    reports.iter().filter(|r| r.admissible).flat_map(|r| r.solutions.iter().map(|s| s.m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn egyptian_branch() {
        let want: BTreeSet<_> = [(3, 3, 3), (4, 2, 4), (6, 2, 3)].into_iter().collect();
        assert_eq!(worked_branch_solutions(50), want);
    }

    #[test]
    fn union_of_m_values() {
        let r = solve_branch_equation(60);
        assert_eq!(m_range(&r), [3, 4, 6].into_iter().collect());
    }

    #[test]
    fn cap_does_not_change_the_solutions() {
        let a: Vec<_> = solve_branch_equation(50).into_iter().map(|r| r.solutions).collect();
        let b: Vec<_> = solve_branch_equation(200).into_iter().map(|r| r.solutions).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn excluded_branch_has_unbounded_m() {
        use EndpointFamily::*;
        // two lines and a tilted value solve 1/λ1 + 1/λ2 + 1/ν = 1 for any m they divide
        let b = Branch { first: Line, second: Line, third: Tilted };
        assert!(!b.admissible());
        let m = 60;
        let sum = Rat::new(m, 2) + Rat::new(m, 3) + Rat::from(1) - Rat::new(m, 6) * 5;
        assert_eq!(sum, Rat::one());
    }
}
