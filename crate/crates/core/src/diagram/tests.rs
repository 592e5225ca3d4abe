use super::*;

const HOPF: &str = "X[2,4,3,1] X[4,2,1,3]";
const TREFOIL: &str = "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]";
const KINK: &str = "X[1,1,2,2]";

fn stats_tuple(d: &Diagram) -> (usize, usize, i64, usize) {
    let s = d.stats();
    (s.c_plus, s.c_minus, s.writhe, s.n_components)
}

#[test]
fn unknot_descriptor() {
    let d = parse_pd("U1").unwrap();
    assert_eq!(d.n_crossings(), 0);
    assert_eq!(stats_tuple(&d), (0, 0, 0, 1));
}

#[test]
fn hopf_signs_follow_the_right_hand_rule() {
    let d = parse_pd(HOPF).unwrap();
    assert!(d.crossings().iter().all(|c| c.sign == Sign::Positive));
    assert_eq!(stats_tuple(&d), (2, 0, 2, 2));
    assert_eq!(d.linking_number(0, 1).unwrap(), 1);
    assert_eq!(d.linking_number(1, 0).unwrap(), 1);
}

#[test]
fn trefoil_is_positive() {
    let d = parse_pd(TREFOIL).unwrap();
    assert_eq!(stats_tuple(&d), (3, 0, 3, 1));
}

#[test]
fn knot_atlas_wrapper_and_mixed_separators() {
    let d = parse_pd("PD[X[1,5,2,4],X[3,1,4,6]\nX[5,3,6,2]]").unwrap();
    assert_eq!(d.stats().writhe, 3);
    let d = parse_pd("X[1,1,2,2], U2").unwrap();
    assert_eq!(d.n_components(), 3);
}

#[test]
fn mirror_swaps_signs_and_is_an_involution() {
    let d = parse_pd(TREFOIL).unwrap();
    let m = d.mirror();
    assert_eq!(stats_tuple(&m), (0, 3, -3, 1));
    assert_eq!(m.mirror(), d);
    assert_eq!(Diagram::unknot().mirror(), Diagram::unknot());
}

#[test]
fn reversing_a_hopf_component_flips_both_signs() {
    let d = parse_pd(HOPF).unwrap();
    let r = d.reverse_component(1).unwrap();
    assert_eq!(stats_tuple(&r), (0, 2, -2, 2));
    assert_eq!(r.linking_number(0, 1).unwrap(), -1);
    assert_eq!(r.reverse_component(1).unwrap(), d);
}

#[test]
fn reversing_a_knot_keeps_signs() {
    let d = parse_pd(TREFOIL).unwrap();
    let r = d.reverse_component(0).unwrap();
    assert_eq!(stats_tuple(&r), stats_tuple(&d));
}

#[test]
fn kink_is_one_positive_crossing() {
    let d = parse_pd(KINK).unwrap();
    assert_eq!(stats_tuple(&d), (1, 0, 1, 1));
}

#[test]
fn reversed_pd_parses_back_to_the_same_signs() {
    let d = parse_pd(HOPF).unwrap().reverse_component(0).unwrap();
    let again = parse_pd(&d.to_pd_string()).unwrap();
    assert_eq!(again, d);
}

#[test]
fn relabelling_increases_along_components() {
    let d = parse_pd(HOPF).unwrap().relabelled();
    for &l in d.edge_labels() {
        let next = d.next_edge(l).unwrap();
        let same = d.component_of_edge(l) == d.component_of_edge(next);
        assert!(same);
        assert!(next == l + 1 || d.component_of_edge(l) != d.component_of_edge(l + 1) || l == d.max_label());
    }
    assert_eq!(stats_tuple(&d), (2, 0, 2, 2));
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_pd("X[1,2,3]"), Err(DiagramError::Syntax { .. })));
    assert!(matches!(parse_pd(""), Err(DiagramError::Syntax { .. })));
    assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(DiagramError::Syntax { .. })));
    assert!(matches!(
        parse_pd("X[1,5,2,4], X[3,1,4,6], X[5,3,6,7]"),
        Err(DiagramError::EdgeMultiplicity { .. })
    ));
    assert!(matches!(parse_pd("X[0,1,1,0]"), Err(DiagramError::ZeroLabel)));
    // Under-strand of the second crossing runs against the first.
    assert!(matches!(parse_pd("X[1,3,2,4] X[1,4,2,3]"), Err(DiagramError::Inconsistent(_))));
}

#[test]
fn linking_number_errors() {
    let d = parse_pd(HOPF).unwrap();
    assert_eq!(d.linking_number(0, 0), Err(DiagramError::SelfLinking));
    assert!(matches!(d.linking_number(0, 2), Err(DiagramError::ComponentOutOfRange { .. })));
    assert_eq!(Diagram::unlink(2).linking_number(0, 1).unwrap(), 0);
}

#[test]
fn orientation_override_for_over_only_component() {
    // Closure of s1 s1^-1: the component on edges {1,4} only passes over.
    let text = "X[2,4,3,1] X[3,4,2,1]";
    let fwd = parse_pd_with_orientation(text, &[(1, 0)]).unwrap();
    let back = parse_pd_with_orientation(text, &[(1, 1)]).unwrap();
    assert_eq!(fwd.linking_number(0, 1).unwrap(), 0);
    assert_ne!(fwd.crossings()[0].sign, back.crossings()[0].sign);
    assert!(matches!(parse_pd_with_orientation(text, &[(9, 0)]), Err(DiagramError::UnknownEdge(9))));
}

#[test]
fn non_planar_codes_are_rejected() {
    // an edge joining opposite slots of one crossing
    let err = parse_pd("X[1,5,2,4], X[3,1,4,7], X[5,3,6,2], X[6,8,7,8]").unwrap_err();
    assert!(matches!(err, DiagramError::NonPlanar { .. }));
}
