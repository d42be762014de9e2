mod common;

use cdp_core::equiv::{apply_move, apply_moves, Move};
use cdp_core::fano::{cdp_to_polytope, polytope_to_cdp};
use cdp_core::lattice::{
    det, find_orth_basis, upper_hull, IntMatrix, LatticePolytope, LatticeVector, OrthBasis, UnimodularAffineMap,
};
use cdp_core::{check_positivity, Cdp, PlFunction, Rat};
use common::*;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_points(r: &mut ChaCha8Rng, d: usize, k: usize, range: i64) -> Vec<LatticeVector> {
    (0..k).map(|_| LatticeVector((0..d).map(|_| r.gen_range(-range..=range)).collect())).collect()
}

fn random_polygon_around_origin(r: &mut ChaCha8Rng) -> LatticePolytope {
    loop {
        let k = r.gen_range(3..=7);
        if let Ok(p) = LatticePolytope::new(&random_points(r, 2, k, 3)) {
            if p.dim() == 2 && p.require_origin_interior().is_ok() {
                return p;
            }
        }
    }
}

fn random_rat_in(r: &mut ChaCha8Rng, base: &LatticePolytope) -> Vec<Rat> {
    let (lo, hi) = base.bounding_box();
    loop {
        let u: Vec<Rat> = lo.iter().zip(&hi).map(|(&a, &b)| Rat::new(r.gen_range(a * 12..=b * 12), 12)).collect();
        if base.contains(&u) {
            return u;
        }
    }
}

fn fixture(r: &mut ChaCha8Rng) -> Cdp {
    let all = fixture_cdps();
    all[r.gen_range(0..all.len())].1.clone()
}

/// A concave function on `[a, b]` from random support points.
fn random_function(r: &mut ChaCha8Rng, base: &std::sync::Arc<LatticePolytope>) -> PlFunction {
    let lo = base.vertices()[0].0[0];
    let hi = base.vertices()[1].0[0];
    let mut pts = vec![LatticeVector(vec![lo, r.gen_range(-3..=3)]), LatticeVector(vec![hi, r.gen_range(-3..=3)])];
    for _ in 0..r.gen_range(0..3) {
        pts.push(LatticeVector(vec![r.gen_range(lo..=hi), r.gen_range(-3..=3)]));
    }
    PlFunction::new(base.clone(), pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polytopes_satisfy_their_facets(seed in any::<u64>(), d in 2usize..=3) {
        let mut r = rng(seed);
        let k = r.gen_range(d + 1..=8);
        if let Ok(p) = LatticePolytope::new(&random_points(&mut r, d, k, 3)) {
            prop_assert!(p.check_invariants().is_ok());
            for f in p.facets() {
                for v in p.vertices() {
                    prop_assert!(v.dot(&f.normal) <= f.offset);
                }
                prop_assert!(f.vertices.len() >= p.dim());
            }
        }
    }

    #[test]
    fn upper_hull_dominates_its_points(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(3..=8);
        let pts = random_points(&mut r, 3, k, 3);
        if let Ok(facets) = upper_hull(&pts) {
            for f in &facets {
                let nt = f.normal.0[2];
                prop_assert!(nt > 0);
                let value = |p: &LatticeVector| Rat::new(f.offset - f.normal.0[0] * p.0[0] - f.normal.0[1] * p.0[1], nt);
                for p in &pts {
                    prop_assert!(value(p) >= Rat::from(p.0[2]));
                }
                for v in &f.vertices {
                    prop_assert_eq!(value(v), Rat::from(v.0[2]));
                }
            }
        }
    }

    #[test]
    fn alpha_scaled_directions_stay_inside(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_polygon_around_origin(&mut r);
        let v = LatticeVector(vec![r.gen_range(-3..=3), r.gen_range(-3..=3)]);
        prop_assume!(!v.is_zero() && v.content() == 1);
        let a = p.alpha_v(&v).unwrap();
        prop_assert!(a <= Rat::one());
        if a < Rat::one() {
            let u: Vec<Rat> = v.to_rat().iter().map(|x| x * &a).collect();
            let w: Vec<Rat> = u.iter().map(|x| -x).collect();
            prop_assert!(p.contains(&u) && p.contains(&w));
        }
    }

    #[test]
    fn orth_basis_is_unimodular_and_witnessed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_polygon_around_origin(&mut r);
        match find_orth_basis(&p).unwrap() {
            OrthBasis::Basis { e1, e2, witness } => {
                prop_assert_eq!(det(&IntMatrix::from_columns(&[e1.clone(), e2.clone()])).unwrap().abs(), 1);
                prop_assert!(p.contains_lattice(&witness));
                prop_assert!(p.contains_lattice(&e1.neg()) && p.contains_lattice(&e2.neg()));
            }
            OrthBasis::CrossEquivalence { map } => {
                prop_assert_eq!(p.map(&map), LatticePolytope::cross_polytope(2).unwrap());
            }
        }
    }

    #[test]
    fn hull_and_pieces_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = fixture(&mut r);
        let f = &c.functions()[r.gen_range(0..c.n())];
        for _ in 0..20 {
            let u = random_rat_in(&mut r, c.base());
            let lowest = f.pieces().iter().map(|p| p.value(&u)).min().unwrap();
            prop_assert_eq!(f.evaluate(&u).unwrap(), lowest);
        }
    }

    #[test]
    fn functions_are_concave(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = fixture(&mut r);
        let f = &c.functions()[r.gen_range(0..c.n())];
        let u = random_rat_in(&mut r, c.base());
        let w = random_rat_in(&mut r, c.base());
        let t = Rat::new(r.gen_range(1..12), 12);
        let s = Rat::one() - &t;
        let mid: Vec<Rat> = u.iter().zip(&w).map(|(a, b)| &t * a + &s * b).collect();
        let chord = &t * f.evaluate(&u).unwrap() + &s * f.evaluate(&w).unwrap();
        prop_assert!(f.evaluate(&mid).unwrap() >= chord);
    }

    #[test]
    fn positivity_never_contradicts_sampling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = r.gen_range(-3..=-1);
        let b = r.gen_range(1..=3);
        let base = std::sync::Arc::new(LatticePolytope::interval(a, b).unwrap());
        let fs: Vec<PlFunction> = (0..r.gen_range(1..=3)).map(|_| random_function(&mut r, &base)).collect();
        let c = Cdp::new_unchecked(base.clone(), fs).unwrap();
        let refuted = (a * 8 + 1..b * 8).any(|k| !c.sum_at(&[Rat::new(k, 8)]).is_positive());
        if refuted {
            prop_assert!(!check_positivity(&c));
        }
        // on a segment the sum is positive inside iff it is at the breakpoints
        // and non-negative at the ends
        let mut breaks: Vec<i64> = c.functions().iter().flat_map(|f| f.graph_vertices().iter().map(|v| v.0[0])).collect();
        breaks.retain(|&x| a < x && x < b);
        let exact = !c.sum_at_lattice(&LatticeVector(vec![a])).is_negative()
            && !c.sum_at_lattice(&LatticeVector(vec![b])).is_negative()
            && c.sum_at(&[Rat::new(a + b, 2)]).is_positive()
            && breaks.iter().all(|&x| c.sum_at_lattice(&LatticeVector(vec![x])).is_positive());
        prop_assert_eq!(check_positivity(&c), exact);
    }

    #[test]
    fn moves_invert_and_keep_positivity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = fixture(&mut r);
        let len = r.gen_range(0..3);
        let (start, _) = random_moves(&mut r, &c, len);
        let m = random_move(&mut r, &start);
        let moved = apply_move(&start, &m).unwrap();
        prop_assert!(check_positivity(&moved));
        let back = apply_moves(&moved, &m.inverse(start.n()).unwrap()).unwrap();
        prop_assert_eq!(back.n(), start.n());
        for p in start.base().lattice_points() {
            for (f, g) in start.functions().iter().zip(back.functions()) {
                prop_assert_eq!(f.evaluate_lattice(&p).unwrap(), g.evaluate_lattice(&p).unwrap());
            }
        }
    }

    #[test]
    fn equivalent_toric_cdps_give_equivalent_polytopes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_polygon_around_origin(&mut r);
        let c = polytope_to_cdp(&p).unwrap();
        prop_assume!(c.n() == 2);
        let (s, t) = (r.gen_range(-3..=3), r.gen_range(-3..=3));
        let moved = apply_moves(&c, &[
            Move::Shear { v: LatticeVector(vec![1]), beta: vec![s, -s] },
            Move::Translate { alpha: vec![t, -t] },
        ]).unwrap();
        let phi = UnimodularAffineMap::new(IntMatrix(vec![vec![1, 0], vec![s, 1]]), LatticeVector(vec![0, t])).unwrap();
        prop_assert_eq!(cdp_to_polytope(&moved).unwrap(), p.map(&phi));
    }
}
