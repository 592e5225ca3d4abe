//! Constructors for derived diagrams: closed braids, torus links, cables,
//! disjoint unions and connected sums.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Crossing, Diagram, EdgeLabel, Sign};
use crate::error::DiagramError;

/// Parameters of the cable `K(p, p t)`; all strands oriented parallel to `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CableSpec {
    pub p: usize,
    pub t: i64,
}

impl CableSpec {
    pub fn new(p: usize, t: i64) -> Result<Self, DiagramError> {
        if p == 0 {
            return Err(DiagramError::InvalidParameter("cable strand count p must be at least 1".into()));
        }
        Ok(CableSpec { p, t })
    }
}

struct Labels(EdgeLabel);

impl Labels {
    fn fresh(&mut self) -> EdgeLabel {
        self.0 += 1;
        self.0
    }
}

/// Appends the crossings of a braid word acting on strands currently carrying
/// `strands` (left to right, all oriented upwards). Generator `i` is
/// `sigma_i`, `-i` its inverse; positive generators give positive crossings.
/// Returns the labels leaving the top of the braid.
fn push_braid(
    crossings: &mut Vec<Crossing>,
    labels: &mut Labels,
    strands: &[EdgeLabel],
    word: &[i32],
) -> Result<Vec<EdgeLabel>, DiagramError> {
    let mut pos = strands.to_vec();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= pos.len() {
            return Err(DiagramError::InvalidParameter(format!(
                "braid generator {g} out of range for {} strands",
                pos.len()
            )));
        }
        let (a, b) = (pos[i - 1], pos[i]);
        let (c, d) = (labels.fresh(), labels.fresh());
        // a, b enter bottom-left/right; c, d leave top-left/right.
        let (pd, sign) = if g > 0 { ([b, d, c, a], Sign::Positive) } else { ([a, b, d, c], Sign::Negative) };
        crossings.push(Crossing::new(pd, sign));
        pos[i - 1] = c;
        pos[i] = d;
    }
    Ok(pos)
}

/// Closure of a braid on `strands` strands.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    if strands == 0 {
        return Err(DiagramError::InvalidParameter("a braid needs at least one strand".into()));
    }
    let mut labels = Labels(0);
    let bottom: Vec<EdgeLabel> = (0..strands).map(|_| labels.fresh()).collect();
    let mut crossings = Vec::new();
    let top = push_braid(&mut crossings, &mut labels, &bottom, word)?;
    let rename: BTreeMap<EdgeLabel, EdgeLabel> = top.iter().copied().zip(bottom.iter().copied()).collect();
    for c in crossings.iter_mut() {
        for l in c.pd.iter_mut() {
            if let Some(&r) = rename.get(l) {
                *l = r;
            }
        }
    }
    let circles = top.iter().zip(&bottom).filter(|(t, b)| t == b).count();
    Ok(Diagram::from_crossings(crossings, circles)?.relabelled())
}

fn full_twist_word(p: usize, twists: i64) -> Vec<i32> {
    let sign = if twists < 0 { -1 } else { 1 };
    let per_twist: Vec<i32> = (1..p as i32).map(|i| sign * i).collect();
    let reps = p * twists.unsigned_abs() as usize;
    per_twist.iter().copied().cycle().take(per_twist.len() * reps).collect()
}

/// Closed-braid diagram of the torus link `T(p, q)`: `(sigma_1 ... sigma_{p-1})^q`.
pub fn torus_diagram(p: usize, q: i64) -> Result<Diagram, DiagramError> {
    if p == 0 {
        return Err(DiagramError::InvalidParameter("torus link needs p >= 1".into()));
    }
    let sign = if q < 0 { -1 } else { 1 };
    let word: Vec<i32> = (0..q.unsigned_abs())
        .flat_map(|_| (1..p as i32).map(move |i| sign * i))
        .collect();
    Ok(braid_closure(p, &word)?.with_name(format!("T({p},{q})")))
}

/// Diagram of the cable `K(p, p t)` of the knot drawn by `d`.
///
/// Every crossing of `d` becomes a `p x p` grid of crossings of the same sign
/// (the blackboard-framed parallel), and `t - writhe(d)` full twists on the
/// `p` strands are inserted right after the tail of the highest-labelled edge.
pub fn cable_diagram(d: &Diagram, spec: CableSpec) -> Result<Diagram, DiagramError> {
    let CableSpec { p, t } = spec;
    if p == 0 {
        return Err(DiagramError::InvalidParameter("cable strand count p must be at least 1".into()));
    }
    if d.n_components() != 1 {
        return Err(DiagramError::NotAKnot(d.n_components()));
    }
    let name = d.name().map(|n| format!("{n}({p},{t})"));
    if d.n_crossings() == 0 {
        let mut out = torus_diagram(p, p as i64 * t)?;
        if let Some(n) = name {
            out = out.with_name(n);
        }
        return Ok(out);
    }

    let twists = t - d.writhe();
    let edges = d.edge_labels();
    let twisted_edge = d.max_label();
    let mut labels = Labels(0);
    let mut tail: BTreeMap<(EdgeLabel, usize), EdgeLabel> = BTreeMap::new();
    let mut head: BTreeMap<(EdgeLabel, usize), EdgeLabel> = BTreeMap::new();
    for &e in edges {
        for k in 0..p {
            let l = labels.fresh();
            tail.insert((e, k), l);
            let h = if e == twisted_edge && twists != 0 { labels.fresh() } else { l };
            head.insert((e, k), h);
        }
    }

    let mut crossings = Vec::with_capacity(p * p * d.n_crossings());
    for x in d.crossings() {
        let [a, b, c, dd] = x.pd;
        let positive = x.sign == Sign::Positive;
        let (over_in, over_out) = if positive { (dd, b) } else { (b, dd) };
        // Copy k of a strand is offset k units to its left. With the under
        // strand running south to north, under copies sit at x = -k and over
        // copies at y = +v (positive) or y = -v (negative).
        let v_order: Vec<usize> = if positive { (0..p).collect() } else { (0..p).rev().collect() };
        let k_order: Vec<usize> = if positive { (0..p).rev().collect() } else { (0..p).collect() };
        let mut vert: Vec<Vec<EdgeLabel>> = (0..p)
            .map(|k| {
                let mut s = vec![head[&(a, k)]];
                s.extend((1..p).map(|_| labels.fresh()));
                s.push(tail[&(c, k)]);
                s
            })
            .collect();
        let mut hor: Vec<Vec<EdgeLabel>> = (0..p)
            .map(|v| {
                let mut s = vec![head[&(over_in, v)]];
                s.extend((1..p).map(|_| labels.fresh()));
                s.push(tail[&(over_out, v)]);
                s
            })
            .collect();
        for (mv, &v) in v_order.iter().enumerate() {
            for (mh, &k) in k_order.iter().enumerate() {
                let (s_in, s_out) = (vert[k][mv], vert[k][mv + 1]);
                let (h_in, h_out) = (hor[v][mh], hor[v][mh + 1]);
                let pd = if positive { [s_in, h_out, s_out, h_in] } else { [s_in, h_in, s_out, h_out] };
                crossings.push(Crossing::new(pd, x.sign));
            }
        }
        vert.clear();
        hor.clear();
    }

    if twists != 0 {
        // Braid positions run left to right, so position i carries copy p-1-i.
        let strands: Vec<EdgeLabel> = (0..p).map(|i| tail[&(twisted_edge, p - 1 - i)]).collect();
        let word = full_twist_word(p, twists);
        let top = push_braid(&mut crossings, &mut labels, &strands, &word)?;
        let rename: BTreeMap<EdgeLabel, EdgeLabel> =
            top.iter().enumerate().map(|(i, &l)| (l, head[&(twisted_edge, p - 1 - i)])).collect();
        for c in crossings.iter_mut() {
            for l in c.pd.iter_mut() {
                if let Some(&r) = rename.get(l) {
                    *l = r;
                }
            }
        }
        if p == 1 {
            // No crossings were added; close the split edge directly.
            let h = head[&(twisted_edge, 0)];
            let tl = tail[&(twisted_edge, 0)];
            for c in crossings.iter_mut() {
                for l in c.pd.iter_mut() {
                    if *l == h {
                        *l = tl;
                    }
                }
            }
        }
    }

    let mut out = Diagram::from_crossings(crossings, 0)?.relabelled();
    if let Some(n) = name {
        out = out.with_name(n);
    }
    Ok(out)
}

/// Disjoint union; the labels of `d2` are shifted past those of `d1`.
pub fn disjoint_union(d1: &Diagram, d2: &Diagram) -> Diagram {
    let shifted = d2.shifted(d1.max_label());
    let mut crossings = d1.crossings().to_vec();
    crossings.extend_from_slice(shifted.crossings());
    let out = Diagram::from_crossings(crossings, d1.circles() + d2.circles()).expect("labels are disjoint");
    match (d1.name(), d2.name()) {
        (Some(a), Some(b)) => out.with_name(format!("{a} u {b}")),
        _ => out,
    }
}

/// Connected sum of two knot diagrams, cutting edge `e1` of `d1` and `e2` of
/// `d2` and splicing so that orientations agree.
pub fn connected_sum(d1: &Diagram, d2: &Diagram, e1: EdgeLabel, e2: EdgeLabel) -> Result<Diagram, DiagramError> {
    for d in [d1, d2] {
        if d.n_components() != 1 {
            return Err(DiagramError::NotAKnot(d.n_components()));
        }
    }
    let name = match (d1.name(), d2.name()) {
        (Some(a), Some(b)) => Some(format!("{a} # {b}")),
        _ => None,
    };
    let out = if d1.n_crossings() == 0 {
        d2.relabelled()
    } else if d2.n_crossings() == 0 {
        d1.relabelled()
    } else {
        if d1.component_of_edge(e1).is_none() {
            return Err(DiagramError::UnknownEdge(e1));
        }
        if d2.component_of_edge(e2).is_none() {
            return Err(DiagramError::UnknownEdge(e2));
        }
        let offset = d1.max_label();
        let e2s = e2 + offset;
        let bridge = d2.max_label() + offset + 1;
        let mut crossings = d1.crossings().to_vec();
        for c in crossings.iter_mut() {
            let cc = *c;
            for (s, l) in c.pd.iter_mut() .enumerate() {
                if *l == e1 && cc.is_incoming(s) {
                    *l = bridge;
                }
            }
        }
        for c in d2.shifted(offset).crossings() {
            let mut c2 = *c;
            for (s, l) in c2.pd.iter_mut().enumerate() {
                if *l == e2s {
                    *l = if c.is_incoming(s) { e1 } else { bridge };
                }
            }
            crossings.push(c2);
        }
        Diagram::from_crossings(crossings, 0)?.relabelled()
    };
    Ok(match name {
        Some(n) => out.with_name(n),
        None => out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn stats(d: &Diagram) -> (usize, usize, i64, usize) {
        let s = d.stats();
        (s.c_plus, s.c_minus, s.writhe, s.n_components)
    }

    fn trefoil() -> Diagram {
        parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap()
    }

    #[test]
    fn torus_examples() {
        assert_eq!(stats(&torus_diagram(2, 2).unwrap()), (2, 0, 2, 2));
        assert_eq!(stats(&torus_diagram(2, 0).unwrap()), (0, 0, 0, 2));
        assert_eq!(stats(&torus_diagram(4, 4).unwrap()), (12, 0, 12, 4));
        assert_eq!(stats(&torus_diagram(2, 3).unwrap()), (3, 0, 3, 1));
        assert_eq!(stats(&torus_diagram(2, -3).unwrap()), (0, 3, -3, 1));
        assert_eq!(stats(&torus_diagram(3, 3).unwrap()), (6, 0, 6, 3));
        assert_eq!(stats(&torus_diagram(1, 5).unwrap()), (0, 0, 0, 1));
        assert_eq!(torus_diagram(2, 4).unwrap().linking_number(0, 1).unwrap(), 2);
    }

    #[test]
    fn torus_component_count_is_gcd() {
        for p in 1..5usize {
            for q in -6..=6i64 {
                let d = torus_diagram(p, q).unwrap();
                let g = if q == 0 { p } else { num_integer::gcd(p, q.unsigned_abs() as usize) };
                assert_eq!(d.n_components(), g, "T({p},{q})");
                assert_eq!(d.n_crossings(), q.unsigned_abs() as usize * (p - 1));
            }
        }
    }

    #[test]
    fn cable_of_unknot() {
        let u = Diagram::unknot();
        let c = cable_diagram(&u, CableSpec::new(2, 0).unwrap()).unwrap();
        assert_eq!(stats(&c), (0, 0, 0, 2));
        let c = cable_diagram(&u, CableSpec::new(2, 1).unwrap()).unwrap();
        assert_eq!(stats(&c), (2, 0, 2, 2));
    }

    #[test]
    fn cable_of_trefoil_counts() {
        let c = cable_diagram(&trefoil(), CableSpec::new(2, 0).unwrap()).unwrap();
        assert_eq!(stats(&c), (12, 6, 6, 2));
        assert_eq!(c.linking_number(0, 1).unwrap(), 0);
    }

    #[test]
    fn cable_formulas_hold() {
        let knots = [trefoil(), trefoil().mirror(), parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap()];
        for k in &knots {
            let (c, w) = (k.n_crossings() as i64, k.writhe());
            for p in 1..=3usize {
                for t in -2..=3i64 {
                    let out = cable_diagram(k, CableSpec::new(p, t).unwrap()).unwrap();
                    let pp = p as i64;
                    assert_eq!(out.n_crossings() as i64, pp * pp * c + pp * (pp - 1) * (t - w).abs());
                    assert_eq!(out.writhe(), pp * pp * w + pp * (pp - 1) * (t - w));
                    assert_eq!(out.n_components(), p);
                    if p == 2 {
                        assert_eq!(out.linking_number(0, 1).unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn cable_rejects_links() {
        let hopf = torus_diagram(2, 2).unwrap();
        assert_eq!(cable_diagram(&hopf, CableSpec::new(2, 0).unwrap()), Err(DiagramError::NotAKnot(2)));
        assert!(CableSpec::new(0, 1).is_err());
    }

    #[test]
    fn unions_and_sums() {
        let u = Diagram::unknot();
        assert_eq!(stats(&disjoint_union(&u, &u)), (0, 0, 0, 2));
        let t = trefoil();
        assert_eq!(stats(&disjoint_union(&t, &t)), (6, 0, 6, 2));
        let hopf = torus_diagram(2, 2).unwrap();
        assert_eq!(stats(&disjoint_union(&hopf, &u)), (2, 0, 2, 3));

        assert_eq!(stats(&connected_sum(&u, &u, 1, 1).unwrap()), (0, 0, 0, 1));
        let granny = connected_sum(&t, &t, 1, 1).unwrap();
        assert_eq!(stats(&granny), (6, 0, 6, 1));
        let square = connected_sum(&t, &t.mirror(), 2, 3).unwrap();
        assert_eq!(stats(&square), (3, 3, 0, 1));
        assert_eq!(connected_sum(&hopf, &t, 1, 1), Err(DiagramError::NotAKnot(2)));
        assert_eq!(connected_sum(&t, &t, 99, 1), Err(DiagramError::UnknownEdge(99)));
    }
}
