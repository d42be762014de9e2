mod common;

use cdp_core::enumerate::{
    classify_2d, enumerate_fixed_base, ClassifyOptions, EnumerationError, EnumerationOptions, Strategy,
};
use cdp_core::equiv::{canonical_code_any, is_toric};
use cdp_core::fano::{find_certificate, translated};
use cdp_core::fixtures::TABLE_ROWS;
use cdp_core::lattice::{LatticePolytope, LatticeVector};
use cdp_core::{check_positivity, Rat};
use common::*;

#[test]
fn emitted_cdps_recertify() {
    let r = classify_2d(&ClassifyOptions::default()).unwrap();
    for c in &r.classes {
        assert!(find_certificate(&c.cdp).is_ok());
        assert!(check_positivity(&c.cdp));
        assert!(!is_toric(&c.cdp));
        assert!(c.certificate.origin.is_zero());
        assert!(c.cdp.functions().iter().all(|f| !f.is_integral_affine()));
        // the base boundary carries -1 for a normalized representative
        assert_eq!(c.cdp.base().vertices()[0], LatticeVector(vec![-1]));
    }
}

#[test]
fn classification_is_reproducible() {
    let a = serde_json::to_string(&classify_2d(&ClassifyOptions::default()).unwrap()).unwrap();
    let b = serde_json::to_string(&classify_2d(&ClassifyOptions::default()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn each_class_matches_exactly_one_table_row() {
    let r = classify_2d(&ClassifyOptions::default()).unwrap();
    let rows: Vec<_> = TABLE_ROWS.iter().map(|t| (t, canonical_code_any(&t.cdp().unwrap()).unwrap())).collect();
    for c in &r.classes {
        let hits: Vec<_> = rows.iter().filter(|(_, code)| *code == c.code).collect();
        assert_eq!(hits.len(), 1, "class in cell ({}, {})", c.m, c.n);
        let t = hits[0].0;
        assert_eq!((t.m, t.n), (c.m, c.n), "table {} row {}", t.table, t.row);
    }
}

#[test]
fn pruning_changes_nothing_on_the_smallest_cell() {
    let base = LatticePolytope::interval(-1, 1).unwrap();
    let plain = enumerate_fixed_base(&base, 3, &EnumerationOptions::default()).unwrap();
    let pruned = enumerate_fixed_base(
        &base,
        3,
        &EnumerationOptions { pruning: Some(cdp_core::enumerate::StructuralPruning { m: 2 }), ..Default::default() },
    )
    .unwrap();
    assert_eq!(plain.classes.len(), 7);
    assert_eq!(plain.classes, pruned.classes);
}

#[test]
fn thread_count_does_not_change_the_output() {
    let base = LatticePolytope::interval(-1, 3).unwrap();
    let run = |k| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .unwrap()
            .install(|| enumerate_fixed_base(&base, 3, &EnumerationOptions::default()).unwrap())
    };
    assert_eq!(run(1).classes, run(4).classes);
}

#[test]
fn node_limit_carries_the_frontier() {
    let base = LatticePolytope::interval(-1, 5).unwrap();
    let err = enumerate_fixed_base(&base, 3, &EnumerationOptions { max_nodes: 50, ..Default::default() }).unwrap_err();
    match err {
        EnumerationError::NodeLimit { limit, frontier, .. } => {
            assert_eq!(limit, 50);
            assert!(!frontier.is_empty());
        }
        other => panic!("{other}"),
    }
}

#[test]
fn generic_search_over_the_cross_polygon() {
    // experimental path; every result must certify and respect the plane bound
    let base = LatticePolytope::cross_polytope(2).unwrap();
    let opts = EnumerationOptions { strategy: Strategy::Generic, ..Default::default() };
    let found = enumerate_fixed_base(&base, 3, &opts).unwrap();
    assert!(!found.classes.is_empty());
    for f in &found.classes {
        assert!(find_certificate(&f.cdp).is_ok());
        assert!(f.cdp.n() <= 8);
    }
}

/// Sums of translated functions over the certified corpus: above `n - 2`
/// inside, at least `n - 2` on the boundary, exactly `n - 2` on facets not at
/// height one.
#[test]
fn translated_sums_on_the_corpus() {
    for (name, c, cert) in certified_corpus() {
        let t = translated(&c, &cert).unwrap();
        let target = Rat::from(c.n() as i64 - 2);
        let sum = |u: &[Rat]| t.functions.iter().map(|f| f.evaluate(u).unwrap()).sum::<Rat>();
        for p in t.base.interior_lattice_points() {
            assert!(sum(&p.to_rat()) > target, "{name} at {p:?}");
        }
        assert!(sum(&t.base.barycenter()) > target, "{name} at the barycenter");
        for p in t.base.boundary_lattice_points() {
            assert!(sum(&p.to_rat()) >= target, "{name} at {p:?}");
        }
        for f in t.base.facets() {
            if f.offset != 1 {
                for v in t.base.facet_vertices(f) {
                    assert_eq!(sum(&v.to_rat()), target, "{name} at {v:?}");
                }
            }
        }
        // a function that is one along every axis is one everywhere
        for g in &t.functions {
            let axes = axis_points(&t.base);
            if axes.iter().all(|v| g.evaluate_lattice(v).unwrap() == Rat::one()) && !axes.is_empty() {
                assert!(t.base.lattice_points().iter().all(|v| g.evaluate_lattice(v).unwrap() == Rat::one()));
            }
        }
    }
}
