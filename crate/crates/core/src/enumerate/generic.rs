//! Candidate functions on any base: integer values (or nothing) at every
//! lattice point, vertices always present, closed under the upper hull.
//! Exponential in the number of lattice points.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Counter, EnumerationBudget, Role};
use crate::error::Result;
use crate::lattice::{LatticePolytope, LatticeVector};
use crate::plfunction::PlFunction;
use crate::rat::Rat;

/// `None` when the node limit is reached.
pub(super) fn candidates(
    base: &Arc<LatticePolytope>,
    budget: &EnumerationBudget,
    role: Role,
    counter: &mut Counter,
) -> Result<Option<Vec<PlFunction>>> {
    let (lower, upper) = budget.bounds(role);
    let zero = LatticeVector::zero(base.dim());
    // per point: None (left to the hull) or an integer value
    let choices: Vec<Vec<Option<i64>>> = budget
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let lo = lower[i].ceil_i64().expect("small bound");
            let hi = upper[i].floor_i64().expect("small bound");
            let mut c: Vec<Option<i64>> = (lo..=hi).map(Some).collect();
            if !base.vertices().contains(p) {
                c.push(None);
            }
            c
        })
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Ok(Some(Vec::new()));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        if !counter.tick() {
            return Ok(None);
        }
        let support: Vec<LatticeVector> = budget
            .points
            .iter()
            .zip(&idx)
            .zip(&choices)
            .filter_map(|((p, &k), c)| {
                c[k].map(|y| {
                    let mut q = p.0.clone();
                    q.push(y);
                    LatticeVector(q)
                })
            })
            .collect();
        let f = PlFunction::new(base.clone(), support)?;
        let fits = f.at_height_one_with_shift(0)
            && f.eval_lattice_unchecked(&zero).is_positive()
            && budget.points.iter().enumerate().all(|(i, p)| {
                let v: Rat = f.eval_lattice_unchecked(p);
                lower[i] <= v && v <= upper[i]
            });
        if fits && seen.insert(f.graph_vertices().to_vec()) {
            out.push(f);
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(Some(out));
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
