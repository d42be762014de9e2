//! Candidate functions on a segment: sequences of integral graph vertices
//! with strictly decreasing slopes, every segment at height one.

use std::sync::Arc;

use super::{Counter, EnumerationBudget, Role};
use crate::error::Result;
use crate::lattice::{LatticePolytope, LatticeVector};
use crate::plfunction::PlFunction;
use crate::rat::{gcd_i64, Rat};

struct Search<'a> {
    lo: i64,
    hi: i64,
    lower: &'a [Rat],
    upper: &'a [Rat],
    counter: &'a mut Counter,
    out: Vec<Vec<(i64, i64)>>,
}

impl Search<'_> {
    fn at(&self, x: i64) -> usize {
        (x - self.lo) as usize
    }

    fn range(&self, x: i64) -> (i64, i64) {
        let i = self.at(x);
        (self.lower[i].ceil_i64().expect("small bound"), self.upper[i].floor_i64().expect("small bound"))
    }

    fn within(&self, x: i64, y: &Rat) -> bool {
        let i = self.at(x);
        self.lower[i] <= *y && *y <= self.upper[i]
    }

    /// Returns false once the node limit is hit.
    fn extend(&mut self, path: &mut Vec<(i64, i64)>, slope: Option<Rat>) -> bool {
        if !self.counter.tick() {
            return false;
        }
        let (x, y) = *path.last().unwrap();
        if x == self.hi {
            self.out.push(path.clone());
            return true;
        }
        for x2 in x + 1..=self.hi {
            let (ylo, yhi) = self.range(x2);
            for y2 in ylo..=yhi {
                let (dx, dy) = (x2 - x, y2 - y);
                let s = Rat::new(dy, dx);
                if slope.as_ref().is_some_and(|p| s >= *p) {
                    continue;
                }
                // primitive normal (-dy, dx) / g must have offset 1 at the origin
                let g = gcd_i64(dx, dy.abs());
                let num = -dy * x + dx * y;
                if num % g != 0 || num / g != 1 {
                    continue;
                }
                if !(x + 1..x2).all(|z| self.within(z, &(Rat::from(y) + &s * (z - x)))) {
                    continue;
                }
                path.push((x2, y2));
                let ok = self.extend(path, Some(s.clone()));
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// `None` when the node limit is reached.
pub(super) fn candidates(
    base: &Arc<LatticePolytope>,
    budget: &EnumerationBudget,
    role: Role,
    counter: &mut Counter,
) -> Result<Option<Vec<PlFunction>>> {
    let lo = base.vertices()[0].0[0];
    let hi = base.vertices()[1].0[0];
    let (lower, upper) = budget.bounds(role);
    let mut s = Search { lo, hi, lower, upper, counter, out: Vec::new() };
    let (ylo, yhi) = s.range(lo);
    for y in ylo..=yhi {
        if !s.extend(&mut vec![(lo, y)], None) {
            return Ok(None);
        }
    }
    let paths = std::mem::take(&mut s.out);
    let fs = paths
        .into_iter()
        .map(|p| PlFunction::new(base.clone(), p.into_iter().map(|(x, y)| LatticeVector(vec![x, y])).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(fs))
}
