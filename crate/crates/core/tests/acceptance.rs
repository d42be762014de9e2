//! One line per acceptance criterion. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cdp_core::enumerate::{classify_2d, m_range, solve_branch_equation, worked_branch_solutions, ClassificationResult, ClassifyOptions};
use cdp_core::equiv::{canonical_code_any, equivalent, is_toric, CanonicalCode};
use cdp_core::fano::{
    c_of_box, cdp_to_polytope, cross_example, directional_bound, find_certificate, is_reflexive, polytope_to_cdp,
    translated, verify_certificate, FanoCertificate,
};
use cdp_core::fixtures::{named_cdp, named_polytope};
use cdp_core::lattice::{LatticePolytope, LatticeVector};
use cdp_core::{Cdp, Rat};
use common::*;
use rand::Rng;
use rayon::prelude::*;

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn standard_basis(d: usize) -> Vec<LatticeVector> {
    (0..d).map(|k| LatticeVector::unit(d, k)).collect()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    check(start.elapsed() <= limit, format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn classification(result: &ClassificationResult, took: Duration) -> Verdict {
    let want = [("2,3", 7), ("2,4", 4), ("3,3", 9), ("4,3", 9), ("6,3", 5)];
    for (cell, count) in want {
        let got = result.breakdown.get(cell).copied().unwrap_or(0);
        check(got == count, format!("cell ({cell}) has {got} classes, expected {count}"))?;
    }
    check(result.classes.len() == 34, format!("{} classes", result.classes.len()))?;
    check(took <= Duration::from_secs(300), format!("took {took:?}"))?;
    Ok(format!("34 classes, breakdown {:?}, single thread {took:?}", result.breakdown))
}

fn fixture_bijection(result: &ClassificationResult) -> Verdict {
    let mut codes = BTreeSet::new();
    for (name, c) in fixture_cdps() {
        find_certificate(&c).map_err(|e| format!("{name} not Fano: {e:?}"))?;
        check(!is_toric(&c), format!("{name} is toric"))?;
        let code = canonical_code_any(&c).map_err(|e| e.to_string())?;
        check(codes.insert(code), format!("{name} repeats an earlier code"))?;
    }
    let found: BTreeSet<CanonicalCode> = result.classes.iter().map(|c| c.code.clone()).collect();
    check(codes == found, format!("{} fixture codes missing from the search", codes.difference(&found).count()))?;
    Ok("34 fixtures certified, non-toric, distinct, and equal to the search output".into())
}

fn diophantine() -> Verdict {
    let start = Instant::now();
    let worked = worked_branch_solutions(50);
    let ms = m_range(&solve_branch_equation(50));
    within(Duration::from_secs(1), start)?;
    check(ms == [3, 4, 6].into_iter().collect(), format!("m-range {ms:?}"))?;
    let want: BTreeSet<_> = [(6, 2, 3), (4, 2, 4)].into_iter().collect();
    check(worked == want, format!("worked branch gives {worked:?}, expected {want:?}; m-range {ms:?} is correct"))?;
    Ok(format!("worked branch {worked:?}, m-range {ms:?}"))
}

fn sharpness() -> Verdict {
    let start = Instant::now();
    for d in 1..=3 {
        let (c, cert) = cross_example(d).map_err(|e| e.to_string())?;
        verify_certificate(&c, &cert).map_err(|e| e.to_string())?;
        check(cert.origin.is_zero(), "certificate origin is not zero")?;
        check(c.functions().iter().all(|f| !f.is_integral_affine()), "an integral-affine function")?;
        check(c.n() == 4 * d, format!("d={d}: n={}", c.n()))?;
        let cap = c_of_box(c.base(), &standard_basis(d)).map_err(|e| e.to_string())?;
        check(cap == Rat::from(4 * d as i64), format!("d={d}: c={cap}"))?;
    }
    within(Duration::from_secs(1), start)?;
    Ok("n = c = 4d for d = 1, 2, 3; d = 2 reaches 8".into())
}

fn directions(d: usize) -> Vec<LatticeVector> {
    let r = if d <= 2 { 2 } else { 1 };
    let mut out = Vec::new();
    let mut v = vec![-r; d];
    loop {
        let lv = LatticeVector(v.clone());
        if !lv.is_zero() && lv.content() == 1 {
            out.push(lv);
        }
        let mut k = 0;
        while k < d && v[k] == r {
            v[k] = -r;
            k += 1;
        }
        if k == d {
            return out;
        }
        v[k] += 1;
    }
}

fn bound_suite(corpus: &[(String, Cdp, FanoCertificate)]) -> Verdict {
    check(corpus.len() >= 500, format!("only {} certified instances", corpus.len()))?;
    let mut conjecture_ok = 0;
    for (name, c, cert) in corpus {
        let d = c.dim();
        let cap = c_of_box(c.base(), &standard_basis(d)).map_err(|e| format!("{name}: {e}"))?;
        check(Rat::from(c.n() as i64) <= cap, format!("{name}: n = {} > c = {cap}", c.n()))?;
        for v in directions(d) {
            let b = directional_bound(c, cert, &v).map_err(|e| format!("{name} along {v:?}: {e}"))?;
            check(Rat::from(b.r as i64) <= b.bound, format!("{name} along {v:?}: r = {} > {}", b.r, b.bound))?;
        }
        if d == 2 {
            check(c.n() <= 8, format!("{name}: n = {} over a plane", c.n()))?;
        }
        if d <= 2 && c.n() <= 1 << (d + 1) {
            conjecture_ok += 1;
        }
    }
    let low = corpus.iter().filter(|x| x.1.dim() <= 2).count();
    check(conjecture_ok == low, "a certified CDP exceeds n <= 2^(d+1)")?;
    Ok(format!("{} certified instances satisfy n <= c and every directional bound", corpus.len()))
}

/// Values in `(1/λ)Z` at every point of `(1/λ)Z^d` in the base, `λ <= 6`.
fn integral_by_brute_force(f: &cdp_core::PlFunction) -> bool {
    let base = f.base();
    let (lo, hi) = base.bounding_box();
    (1..=6).all(|l| {
        let d = base.dim();
        let mut p: Vec<i64> = lo.iter().map(|x| x * l).collect();
        loop {
            let u = rat_point(&LatticeVector(p.clone()), l);
            if base.contains(&u) {
                let v = f.evaluate(&u).unwrap() * l;
                if !v.is_integer() {
                    return false;
                }
            }
            let mut k = 0;
            while k < d && p[k] == hi[k] * l {
                p[k] = lo[k] * l;
                k += 1;
            }
            if k == d {
                return true;
            }
            p[k] += 1;
        }
    })
}

fn lemma_suites(corpus: &[(String, Cdp, FanoCertificate)]) -> Verdict {
    let checked: Vec<usize> = corpus
        .par_iter()
        .map(|(name, c, cert)| -> Result<usize, String> {
            let t = translated(c, cert).map_err(|e| e.to_string())?;
            let zero = vec![Rat::zero(); c.dim()];
            let mut k = 0;
            for (i, f) in t.functions.iter().enumerate() {
                let at = |u: &[Rat]| f.evaluate(u).unwrap();
                let f0 = at(&zero);
                let integral = f0 == Rat::one();
                check(
                    integral_by_brute_force(f) == integral,
                    format!("{name} #{i}: integrality disagrees with the value {f0} at 0"),
                )?;
                if !integral {
                    let l = f0.recip();
                    check(l.is_integer() && l >= Rat::from(2), format!("{name} #{i}: value {f0} at 0"))?;
                } else {
                    let mut rim = t.base.boundary_lattice_points();
                    rim.extend(t.base.vertices().iter().cloned());
                    for v in rim {
                        let half = rat_point(&v, 2);
                        check(
                            at(&half) * 2 == &f0 + &at(&v.to_rat()),
                            format!("{name} #{i}: not linear from 0 to {v:?}"),
                        )?;
                    }
                }
                for v in axis_points(&t.base) {
                    let s = at(&v.to_rat()) + at(&v.neg().to_rat());
                    let len = v.0.iter().map(|x| x.abs()).max().unwrap();
                    let ok = if !integral {
                        s <= Rat::one()
                    } else if s == &f0 * 2 {
                        s == Rat::from(2)
                    } else {
                        s <= Rat::from(2 - len)
                    };
                    check(ok, format!("{name} #{i}: endpoint sum {s} along {v:?}"))?;
                }
                k += 1;
            }
            Ok(k)
        })
        .collect::<Result<_, _>>()?;
    Ok(format!("{} translated functions pass the integrality, linearity, endpoint-sum and 1/λ checks", checked.iter().sum::<usize>()))
}

fn random_polygon(rng: &mut impl Rng) -> LatticePolytope {
    loop {
        let k = rng.gen_range(3..=6);
        let pts: Vec<LatticeVector> =
            (0..k).map(|_| LatticeVector(vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)])).collect();
        if let Ok(p) = LatticePolytope::new(&pts) {
            if p.dim() == 2 && p.require_origin_interior().is_ok() {
                return p;
            }
        }
    }
}

fn toric_correspondence() -> Verdict {
    let start = Instant::now();
    let mut r = rng(11);
    let mut reflexive = 0;
    for k in 0..200 {
        // every fourth polygon is a reflexive one put in a random position
        let p = if k % 4 == 0 {
            let q = named_polytope("figure3_left").unwrap().unwrap();
            let m = random_unimodular(&mut r, 2);
            q.map(&cdp_core::lattice::UnimodularAffineMap::linear(m).unwrap())
        } else {
            random_polygon(&mut r)
        };
        let c = polytope_to_cdp(&p).map_err(|e| e.to_string())?;
        let fano = find_certificate(&c).is_ok();
        let refl = is_reflexive(&p);
        reflexive += refl as usize;
        check(fano == refl, format!("{:?}: Fano {fano}, reflexive {refl}", p.vertices()))?;
        let back = cdp_to_polytope(&c).map_err(|e| e.to_string())?;
        check(back == p, format!("{:?} does not survive the round trip", p.vertices()))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("200 polygons ({reflexive} reflexive) agree and round-trip"))
}

fn canonical_robustness() -> Verdict {
    let fixtures = fixture_cdps();
    fixtures.par_iter().enumerate().try_for_each(|(k, (name, c))| -> Result<(), String> {
        let want = canonical_code_any(c).map_err(|e| e.to_string())?;
        let mut r = rng(1000 + k as u64);
        for trial in 0..1000 {
            let len = r.gen_range(1..=6);
            let (moved, moves) = random_moves(&mut r, c, len);
            let got = canonical_code_any(&moved).map_err(|e| e.to_string())?;
            check(got == want, format!("{name}, trial {trial}: code changed under {moves:?}"))?;
        }
        Ok(())
    })?;
    let step = |k: usize| named_cdp(&format!("figure1_step{k}")).unwrap().unwrap();
    check(equivalent(&step(0), &step(3)).map_err(|e| e.to_string())?, "figure 1 ends are not equivalent")?;
    let three: Vec<Cdp> = ["figure3_left", "figure3_middle", "figure3_right"]
        .iter()
        .map(|n| polytope_to_cdp(&named_polytope(n).unwrap().unwrap()).unwrap())
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            check(!equivalent(&three[i], &three[j]).map_err(|e| e.to_string())?, format!("figure 3: {i} ~ {j}"))?;
        }
    }
    Ok("34 x 1000 move sequences keep the code; figure 1 equivalent, figure 3 pairwise inequivalent".into())
}

fn run(id: u8, name: &str, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let (tag, detail) = match &verdict {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {id} {tag} {name} [{:.2?}]: {detail}", start.elapsed());
    verdict.is_ok()
}

fn main() {
    let start = Instant::now();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let classified = single.install(|| classify_2d(&ClassifyOptions::default()));
    let took = start.elapsed();
    let corpus = certified_corpus();
    let results = [
        run(1, "classification", || classification(classified.as_ref().map_err(|e| e.to_string())?, took)),
        run(2, "fixture bijection", || fixture_bijection(classified.as_ref().map_err(|e| e.to_string())?)),
        run(3, "diophantine branches", diophantine),
        run(4, "sharpness constructions", sharpness),
        run(5, "bound suite", || bound_suite(&corpus)),
        run(6, "lemma property suites", || lemma_suites(&corpus)),
        run(7, "toric/reflexive correspondence", toric_correspondence),
        run(8, "canonical-form robustness", canonical_robustness),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
