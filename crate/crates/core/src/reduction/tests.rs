use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::diagram::parse_pd;
use crate::factory::torus_diagram;
use crate::invariants::naive_betti;

fn scan_betti(pd: &str) -> BTreeMap<(i64, i64), u64> {
    scan(&parse_pd(pd).unwrap(), &ScanConfig::default(), &mut |_| {}).unwrap().betti
}

#[test]
fn single_crossing_closed_up_matches_cube() {
    for pd in ["X[1,1,2,2]", "X[1,2,2,1]"] {
        let d = parse_pd(pd).unwrap();
        let mut seed = LocalComplex::new();
        seed.add_object(Tangle::empty(), 0, 0);
        let (cx, boundary) = tensor_crossing(&seed, &[], &d.crossings()[0]).unwrap();
        assert!(boundary.is_empty());
        let cx = cx.deloop();
        let mut by_h: BTreeMap<i32, usize> = BTreeMap::new();
        for (_, o) in cx.objects() {
            *by_h.entry(o.h).or_insert(0) += 1;
        }
        let cube = crate::cube::build_cube(&d, 14).unwrap();
        let dims: Vec<usize> = by_h.values().copied().collect();
        assert_eq!(dims, cube.group_dims(), "{pd}");
    }
}

#[test]
fn tensoring_keeps_d_squared_zero() {
    let d = torus_diagram(3, 4).unwrap();
    let order = crossing_order(&d);
    let mut cx = LocalComplex::new();
    cx.add_object(Tangle::empty(), 0, 0);
    let mut boundary = Vec::new();
    for &x in &order[..5] {
        let (mut next, nb) = tensor_crossing(&cx, &boundary, &d.crossings()[x]).unwrap();
        assert!(next.check_d_squared());
        cx = next.deloop();
        assert!(cx.check_d_squared());
        cx.reduce().unwrap();
        assert!(cx.check_d_squared());
        boundary = nb;
    }
}

#[test]
fn order_is_a_permutation_with_small_boundary() {
    let d = torus_diagram(2, 7).unwrap();
    let mut order = crossing_order(&d);
    order.sort();
    assert_eq!(order, (0..7).collect::<Vec<_>>());
    let outcome = scan(&d, &ScanConfig::default(), &mut |_| {}).unwrap();
    assert!(outcome.max_boundary <= 4);
}

#[test]
fn scan_matches_naive_on_small_diagrams() {
    let pds = [
        "U1",
        "U2",
        "X[1,1,2,2]",
        "X[2,1,1,2]",
        "X[2,4,3,1] X[4,2,1,3]",
        "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]",
        "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]",
        "X[1,5,2,4], X[3,1,4,7], X[5,3,6,2], X[6,8,8,7]",
    ];
    for pd in pds {
        let d = parse_pd(pd).unwrap();
        assert_eq!(scan_betti(pd), naive_betti(&d, 14).unwrap(), "{pd}");
        let m = d.mirror();
        let got = scan(&m, &ScanConfig::default(), &mut |_| {}).unwrap().betti;
        assert_eq!(got, naive_betti(&m, 14).unwrap(), "mirror of {pd}");
    }
}

#[test]
fn scan_matches_naive_on_torus_links() {
    for (p, q) in [(2, 4), (2, -3), (3, 3), (3, 4), (2, 6)] {
        let d = torus_diagram(p, q).unwrap();
        let s = scan(&d, &ScanConfig::default(), &mut |_| {}).unwrap().betti;
        assert_eq!(s, naive_betti(&d, 14).unwrap(), "T({p},{q})");
    }
}

#[test]
fn progress_is_reported_per_crossing() {
    let d = torus_diagram(2, 5).unwrap();
    let mut seen = vec![];
    scan(&d, &ScanConfig::default(), &mut |p| seen.push((p.processed, p.total))).unwrap();
    assert_eq!(seen, (1..=5).map(|k| (k, 5)).collect::<Vec<_>>());
}
