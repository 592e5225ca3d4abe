use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::cube::build_cube;
use crate::diagram::parse_pd;
use crate::factory::{disjoint_union, torus_diagram};

const TREFOIL: &str = "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]";
const FIGURE_EIGHT: &str = "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]";
const KINK: &str = "X[1,1,2,2]";

fn table(d: &Diagram, backend: Backend) -> KhTable {
    kh_table(d, backend, &ComputeConfig::default()).unwrap()
}

fn entries(t: &KhTable) -> Vec<(i64, i64, u64)> {
    t.betti().iter().map(|(&(i, j), &r)| (i, j, r)).collect()
}

#[test]
fn unknot_table() {
    for backend in [Backend::Naive, Backend::Scan] {
        let t = table(&Diagram::unknot(), backend);
        assert_eq!(entries(&t), vec![(0, -1, 1), (0, 1, 1)]);
        assert_eq!(t.extreme_degrees().unwrap(), (0, 0));
    }
}

#[test]
fn trefoil_table() {
    let d = parse_pd(TREFOIL).unwrap();
    for backend in [Backend::Naive, Backend::Scan] {
        let t = table(&d, backend);
        assert_eq!(entries(&t), vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
        assert_eq!(t.source.backend, backend);
    }
}

#[test]
fn extreme_degree_examples() {
    let hopf = torus_diagram(2, 2).unwrap();
    assert_eq!(table(&hopf, Backend::Naive).extreme_degrees().unwrap(), (0, 2));
    let m = parse_pd(TREFOIL).unwrap().mirror();
    assert_eq!(table(&m, Backend::Naive).extreme_degrees().unwrap(), (-3, 0));
}

#[test]
fn kink_is_an_unknot() {
    let d = parse_pd(KINK).unwrap();
    let t = table(&d, Backend::Naive);
    assert_eq!(entries(&t), vec![(0, -1, 1), (0, 1, 1)]);
    assert_eq!(t.c_plus, 1);
}

#[test]
fn auto_switches_backend() {
    let d = parse_pd(TREFOIL).unwrap();
    let cfg = ComputeConfig { naive_limit: 2, ..ComputeConfig::default() };
    let t = kh_table(&d, Backend::Auto, &cfg).unwrap();
    assert_eq!(t.source.backend, Backend::Scan);
    let t = kh_table(&d, Backend::Auto, &ComputeConfig::default()).unwrap();
    assert_eq!(t.source.backend, Backend::Naive);
}

#[test]
fn naive_limit_is_enforced() {
    let d = torus_diagram(2, 5).unwrap();
    let cfg = ComputeConfig { naive_limit: 4, ..ComputeConfig::default() };
    assert!(matches!(kh_table(&d, Backend::Naive, &cfg), Err(ComputeError::CrossingLimit { .. })));
}

#[test]
fn ceiling_is_reported() {
    let d = torus_diagram(2, 5).unwrap();
    let cfg = ComputeConfig { ceiling: 3, ..ComputeConfig::default() };
    assert!(matches!(kh_table(&d, Backend::Scan, &cfg), Err(ComputeError::Ceiling { .. })));
}

#[test]
fn jones_examples() {
    assert_eq!(jones_via_kauffman(&Diagram::unknot()).unwrap(), LaurentPoly::circle());
    assert_eq!(jones_via_kauffman(&Diagram::unlink(2)).unwrap(), LaurentPoly::circle().pow(2));
    for pd in [TREFOIL, FIGURE_EIGHT, KINK] {
        let d = parse_pd(pd).unwrap();
        let chi = build_cube(&d, 14).unwrap().euler_characteristic();
        assert_eq!(jones_via_kauffman(&d).unwrap(), chi, "{pd}");
    }
}

#[test]
fn jones_limit() {
    let d = torus_diagram(2, 21).unwrap();
    assert!(matches!(jones_via_kauffman(&d), Err(ComputeError::CrossingLimit { .. })));
}

#[test]
fn table_euler_characteristic_matches_jones() {
    for pd in [TREFOIL, FIGURE_EIGHT, KINK] {
        let d = parse_pd(pd).unwrap();
        assert_eq!(table(&d, Backend::Scan).euler_characteristic(), jones_via_kauffman(&d).unwrap());
    }
}

#[test]
fn adequacy_examples() {
    assert!(plus_adequate(&parse_pd(TREFOIL).unwrap()));
    assert!(!plus_adequate(&parse_pd(KINK).unwrap()));
    assert!(plus_adequate(&Diagram::unknot()));
    assert!(minus_adequate(&parse_pd(TREFOIL).unwrap().mirror()));
}

#[test]
fn adequacy_detects_top_degree() {
    let fig8 = parse_pd(FIGURE_EIGHT).unwrap();
    let diagrams = [
        parse_pd(TREFOIL).unwrap(),
        parse_pd(TREFOIL).unwrap().mirror(),
        parse_pd(KINK).unwrap(),
        parse_pd(KINK).unwrap().mirror(),
        fig8.clone(),
        torus_diagram(2, 2).unwrap(),
        torus_diagram(3, 3).unwrap(),
        disjoint_union(&fig8, &parse_pd(KINK).unwrap()),
    ];
    for d in &diagrams {
        let t = table(d, Backend::Scan);
        assert_eq!(t.i_max().unwrap() == d.stats().c_plus as i64, plus_adequate(d), "{d}");
    }
}

#[test]
fn reducedness() {
    assert!(is_reduced(&parse_pd(TREFOIL).unwrap()));
    assert!(is_reduced(&parse_pd(FIGURE_EIGHT).unwrap()));
    assert!(!is_reduced(&parse_pd(KINK).unwrap()));
    assert!(is_reduced(&Diagram::unknot()));
    // trefoil with a kink added on edge 6
    let kinked = parse_pd("X[1,5,2,4], X[3,1,4,7], X[5,3,6,2], X[6,8,8,7]").unwrap();
    assert!(!is_reduced(&kinked));
}

#[test]
fn hashes_are_stable_and_distinguish_mirrors() {
    let d = parse_pd(TREFOIL).unwrap();
    assert_eq!(diagram_hash(&d), diagram_hash(&d.clone()));
    assert_ne!(diagram_hash(&d), diagram_hash(&d.mirror()));
    assert_eq!(diagram_hash(&d).len(), 64);
    let t = table(&d, Backend::Naive);
    assert_eq!(t.table_hash(), table(&d, Backend::Scan).table_hash());
}
