#![allow(dead_code)]

use cdp_core::enumerate::{enumerate_fixed_base, EnumerationOptions};
use cdp_core::equiv::{apply_move, normalize, Move};
use cdp_core::fano::{cross_example, find_certificate, FanoCertificate};
use cdp_core::fixtures::TABLE_ROWS;
use cdp_core::lattice::{IntMatrix, LatticePolytope, LatticeVector, UnimodularAffineMap};
use cdp_core::{Cdp, Rat};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Integers summing to zero.
pub fn zero_sum(rng: &mut impl Rng, n: usize, r: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
    let s: i64 = v.iter().sum();
    v[n - 1] -= s;
    v
}

pub fn random_unimodular(rng: &mut impl Rng, d: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        match rng.gen_range(0..3) {
            0 if i != j => m.0.swap(i, j),
            1 => m.0[i].iter_mut().for_each(|x| *x = -*x),
            _ if i != j => {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row = m.0[j].clone();
                m.0[i].iter_mut().zip(row).for_each(|(x, y)| *x += s * y);
            }
            _ => {}
        }
    }
    m
}

/// A legal move for `c`, chosen at random.
pub fn random_move(rng: &mut impl Rng, c: &Cdp) -> Move {
    let n = c.n();
    let d = c.dim();
    let zeros: Vec<usize> = (0..n).filter(|&i| c.functions()[i].is_identically_zero()).collect();
    loop {
        match rng.gen_range(0..6) {
            0 if n < 6 => return Move::AddZero,
            1 if !zeros.is_empty() && n > 1 => return Move::RemoveZero { index: *zeros.choose(rng).unwrap() },
            2 => {
                let mut sigma: Vec<usize> = (0..n).collect();
                sigma.shuffle(rng);
                return Move::Permute { sigma };
            }
            3 => {
                let t = LatticeVector((0..d).map(|_| rng.gen_range(-2..=2)).collect());
                let map = UnimodularAffineMap::new(random_unimodular(rng, d), t).unwrap();
                return Move::TransformBase { map };
            }
            4 => return Move::Translate { alpha: zero_sum(rng, n, 3) },
            5 => {
                let v = LatticeVector((0..d).map(|_| rng.gen_range(-2..=2)).collect());
                return Move::Shear { v, beta: zero_sum(rng, n, 2) };
            }
            _ => {}
        }
    }
}

pub fn random_moves(rng: &mut impl Rng, c: &Cdp, len: usize) -> (Cdp, Vec<Move>) {
    let mut cur = c.clone();
    let mut moves = Vec::new();
    for _ in 0..len {
        let m = random_move(rng, &cur);
        cur = apply_move(&cur, &m).unwrap();
        moves.push(m);
    }
    (cur, moves)
}

pub fn fixture_cdps() -> Vec<(String, Cdp)> {
    TABLE_ROWS.iter().map(|r| (format!("table{}_row{}", r.table, r.row), r.cdp().unwrap())).collect()
}

/// Certified normalized CDPs (origin at zero) from every source in the crate:
/// the table fixtures, their images under random moves, searches over a few
/// segments, and the cross-polytope constructions.
pub fn certified_corpus() -> Vec<(String, Cdp, FanoCertificate)> {
    let mut out = Vec::new();
    let mut push = |name: String, c: &Cdp| {
        let cert = find_certificate(c).unwrap_or_else(|e| panic!("{name} is not Fano: {e:?}"));
        let nz = normalize(c, &cert).unwrap();
        out.push((name, nz.cdp, nz.certificate));
    };
    let mut r = rng(7);
    for (name, c) in fixture_cdps() {
        push(name.clone(), &c);
        for k in 0..15 {
            let len = r.gen_range(1..=6);
            let (moved, _) = random_moves(&mut r, &c, len);
            push(format!("{name}/moved{k}"), &moved);
        }
    }
    for (a, b, n) in [(-1, 1, 3), (-1, 1, 4), (-1, 2, 3), (-2, 1, 3), (-2, 2, 3), (-1, 3, 3), (-2, 3, 3), (-1, 5, 3)] {
        let base = LatticePolytope::interval(a, b).unwrap();
        for (i, f) in enumerate_fixed_base(&base, n, &EnumerationOptions::default()).unwrap().classes.iter().enumerate() {
            push(format!("[{a},{b}] n={n} #{i}"), &f.cdp);
        }
    }
    for d in 1..=3 {
        push(format!("cross_example({d})"), &cross_example(d).unwrap().0);
    }
    out
}

pub fn axis_points(base: &LatticePolytope) -> Vec<LatticeVector> {
    base.lattice_points()
        .into_iter()
        .filter(|p| p.0.iter().filter(|&&x| x != 0).count() == 1 && base.contains_lattice(&p.neg()))
        .collect()
}

pub fn rat_point(p: &LatticeVector, scale: i64) -> Vec<Rat> {
    p.0.iter().map(|&x| Rat::new(x, scale)).collect()
}
