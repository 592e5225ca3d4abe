//! The cube of resolutions and Khovanov's chain complex over the rationals.
//!
//! Smoothing conventions: at a crossing `X[a,b,c,d]` the 0-smoothing joins
//! slots (0,1) and (2,3), the 1-smoothing joins (0,3) and (1,2). On a
//! positive crossing the 0-smoothing is the oriented one.
//!
//! A generator is a state plus a labelling of its circles by `v+` / `v-`.
//! With `r` one-smoothings and label exponent `e = #v+ - #v-` it sits in
//! normalized bidegree `i = r - c-`, `j = e + r + c+ - 2 c-`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Diagram, EdgeLabel};
use crate::error::ComputeError;
use crate::linalg::{Rational, SparseMatrix};
use crate::poly::LaurentPoly;

pub const DEFAULT_NAIVE_LIMIT: usize = 14;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Slot pairs joined by each smoothing.
pub(crate) fn smoothing_arcs(bit: bool) -> [(usize, usize); 2] {
    if bit {
        [(0, 3), (1, 2)]
    } else {
        [(0, 1), (2, 3)]
    }
}

/// Circles of a state over dense edge indices: returns the circle index of
/// every edge (numbered by smallest edge) and the number of edge circles,
/// excluding the diagram's crossingless circles.
pub(crate) fn edge_circles(d: &Diagram, bit: impl Fn(usize) -> bool) -> (Vec<usize>, usize) {
    let labels = d.edge_labels();
    let idx = |l: EdgeLabel| labels.binary_search(&l).unwrap();
    let mut uf = UnionFind::new(labels.len());
    for (x, c) in d.crossings().iter().enumerate() {
        for (s1, s2) in smoothing_arcs(bit(x)) {
            uf.union(idx(c.pd[s1]), idx(c.pd[s2]));
        }
    }
    let mut number = vec![usize::MAX; labels.len()];
    let mut out = vec![0; labels.len()];
    let mut n = 0;
    for e in 0..labels.len() {
        let r = uf.find(e);
        if number[r] == usize::MAX {
            number[r] = n;
            n += 1;
        }
        out[e] = number[r];
    }
    (out, n)
}

/// A complete resolution of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionState {
    pub choices: Vec<bool>,
    /// Edges of each circle; crossingless components of the diagram appear
    /// last as circles with no edges.
    pub circles: Vec<Vec<EdgeLabel>>,
    /// Circle index of every edge.
    pub circle_membership: BTreeMap<EdgeLabel, usize>,
}

impl ResolutionState {
    pub fn n_circles(&self) -> usize {
        self.circles.len()
    }

    /// Circles of the two smoothing arcs at crossing `x` (the arc through slot
    /// 0 first).
    pub fn arc_circles(&self, d: &Diagram, x: usize) -> (usize, usize) {
        let c = &d.crossings()[x];
        let [(a, _), (b, _)] = smoothing_arcs(self.choices[x]);
        (self.circle_membership[&c.pd[a]], self.circle_membership[&c.pd[b]])
    }
}

pub fn resolve(d: &Diagram, choices: &[bool]) -> Result<ResolutionState, ComputeError> {
    if choices.len() != d.n_crossings() {
        return Err(ComputeError::StateLength { expected: d.n_crossings(), got: choices.len() });
    }
    let (of_edge, n) = edge_circles(d, |x| choices[x]);
    let mut circles = vec![Vec::new(); n + d.circles()];
    let mut circle_membership = BTreeMap::new();
    for (e, &l) in d.edge_labels().iter().enumerate() {
        circles[of_edge[e]].push(l);
        circle_membership.insert(l, of_edge[e]);
    }
    Ok(ResolutionState { choices: choices.to_vec(), circles, circle_membership })
}

/// Basis element of the cube complex: `labels` has bit `c` set when circle
/// `c` carries `v-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: u64,
    pub labels: u64,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Generators by unnormalized homological degree `r = 0..=n`.
    pub groups: Vec<Vec<Generator>>,
    /// `differentials[r]` maps group `r` to group `r + 1` (rows index the
    /// target).
    pub differentials: Vec<SparseMatrix>,
    pub c_plus: usize,
    pub c_minus: usize,
    state_circles: Vec<u8>,
}

impl ChainComplex {
    pub fn n_crossings(&self) -> usize {
        self.groups.len() - 1
    }

    /// Normalized `(i, j)` of a generator at unnormalized degree `r`.
    pub fn bidegree(&self, r: usize, g: &Generator) -> (i64, i64) {
        let circles = self.state_circles[g.state as usize] as i64;
        let minus = g.labels.count_ones() as i64;
        let e = circles - 2 * minus;
        let (cp, cm) = (self.c_plus as i64, self.c_minus as i64);
        (r as i64 - cm, e + r as i64 + cp - 2 * cm)
    }

    pub fn group_dims(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// `d_{r+1} d_r = 0` for every `r`, in exact arithmetic.
    pub fn check_d_squared(&self) -> Result<(), ComputeError> {
        for r in 0..self.differentials.len().saturating_sub(1) {
            let dd = self.differentials[r + 1].mul(&self.differentials[r])?;
            if !dd.is_zero() {
                return Err(ComputeError::Invariant(alloc::format!("d∘d != 0 at degree {r}")));
            }
        }
        Ok(())
    }

    /// Whether every differential preserves the quantum grading.
    pub fn preserves_quantum_grading(&self) -> bool {
        self.differentials.iter().enumerate().all(|(r, m)| {
            m.entries().all(|(row, col, _)| {
                self.bidegree(r + 1, &self.groups[r + 1][row]).1 == self.bidegree(r, &self.groups[r][col]).1
            })
        })
    }

    /// `sum (-1)^i q^j` over the generators.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (r, group) in self.groups.iter().enumerate() {
            for g in group {
                let (i, j) = self.bidegree(r, g);
                p.add_term(if i % 2 == 0 { 1 } else { -1 }, j);
            }
        }
        p
    }

    /// Splits `d_r` into blocks of constant quantum degree `j`. Every
    /// nonempty source block is listed, including those with no target.
    pub fn quantum_blocks(&self, r: usize) -> BTreeMap<i64, SparseMatrix> {
        let mut col_pos: Vec<(i64, usize)> = Vec::with_capacity(self.groups[r].len());
        let mut col_count: BTreeMap<i64, usize> = BTreeMap::new();
        for g in &self.groups[r] {
            let j = self.bidegree(r, g).1;
            let n = col_count.entry(j).or_insert(0);
            col_pos.push((j, *n));
            *n += 1;
        }
        let mut row_pos: Vec<(i64, usize)> = Vec::new();
        let mut row_count: BTreeMap<i64, usize> = BTreeMap::new();
        if r + 1 < self.groups.len() {
            for g in &self.groups[r + 1] {
                let j = self.bidegree(r + 1, g).1;
                let n = row_count.entry(j).or_insert(0);
                row_pos.push((j, *n));
                *n += 1;
            }
        }
        let mut triplets: BTreeMap<i64, Vec<(usize, usize, Rational)>> = BTreeMap::new();
        if r < self.differentials.len() {
            for (row, col, v) in self.differentials[r].entries() {
                let (j, rr) = row_pos[row];
                let (jc, cc) = col_pos[col];
                debug_assert_eq!(j, jc);
                triplets.entry(j).or_default().push((rr, cc, v.clone()));
            }
        }
        col_count
            .iter()
            .map(|(&j, &nc)| {
                let nr = row_count.get(&j).copied().unwrap_or(0);
                let t = triplets.remove(&j).unwrap_or_default();
                (j, SparseMatrix::from_triplets(nr, nc, t).expect("indices in range"))
            })
            .collect()
    }
}

/// Builds the full cube of resolutions. Fails above `limit` crossings.
pub fn build_cube(d: &Diagram, limit: usize) -> Result<ChainComplex, ComputeError> {
    let n = d.n_crossings();
    if n > limit || n > 40 {
        return Err(ComputeError::CrossingLimit { crossings: n, limit: limit.min(40) });
    }
    let n_states = 1usize << n;
    let extra = d.circles();
    let labels = d.edge_labels();
    let idx = |l: EdgeLabel| labels.binary_search(&l).unwrap();

    let mut state_edges: Vec<Vec<usize>> = Vec::with_capacity(n_states);
    let mut state_circles: Vec<u8> = Vec::with_capacity(n_states);
    for s in 0..n_states {
        let (of_edge, k) = edge_circles(d, |x| s >> x & 1 == 1);
        state_circles.push((k + extra) as u8);
        state_edges.push(of_edge);
    }
    if state_circles.iter().any(|&c| c >= 64) {
        return Err(ComputeError::Invariant("more than 63 circles in a state".into()));
    }

    let mut groups: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
    let mut offset = vec![0usize; n_states];
    for s in 0..n_states {
        let r = (s as u64).count_ones() as usize;
        offset[s] = groups[r].len();
        for m in 0..(1u64 << state_circles[s]) {
            groups[r].push(Generator { state: s as u64, labels: m });
        }
    }

    let mut triplets: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); n];
    for s in 0..n_states {
        let r = (s as u64).count_ones() as usize;
        let cs = state_circles[s] as usize;
        for x in 0..n {
            if s >> x & 1 == 1 {
                continue;
            }
            let t = s | 1 << x;
            let sign: i64 = if (s & ((1 << x) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let pd = d.crossings()[x].pd;
            let (e0, e2) = (idx(pd[0]), idx(pd[2]));
            let (src, tgt) = (&state_edges[s], &state_edges[t]);
            // Map every source circle to the target circle through one of its
            // edges; crossingless circles keep their (trailing) positions.
            let ct = state_circles[t] as usize;
            let mut circ_map = vec![usize::MAX; cs];
            for (e, &c) in src.iter().enumerate() {
                if circ_map[c] == usize::MAX {
                    circ_map[c] = tgt[e];
                }
            }
            for k in 0..extra {
                circ_map[cs - extra + k] = ct - extra + k;
            }
            let (a, b) = (src[e0], src[e2]);
            for m in 0..(1u64 << cs) {
                let mut base = 0u64;
                for c in 0..cs {
                    if c != a && c != b && m >> c & 1 == 1 {
                        base |= 1 << circ_map[c];
                    }
                }
                let col = offset[s] + m as usize;
                let mut push = |tm: u64| {
                    triplets[r].push((offset[t] + tm as usize, col, Rational::from_integer(sign)));
                };
                if a != b {
                    // merge
                    let (xa, xb) = (m >> a & 1, m >> b & 1);
                    if xa == 1 && xb == 1 {
                        continue;
                    }
                    let merged = circ_map[a];
                    push(base | (xa | xb) << merged);
                } else {
                    // split
                    let (t1, t2) = (tgt[e0], tgt[e2]);
                    if m >> a & 1 == 1 {
                        push(base | 1 << t1 | 1 << t2);
                    } else {
                        push(base | 1 << t1);
                        push(base | 1 << t2);
                    }
                }
            }
        }
    }
    let differentials = triplets
        .into_iter()
        .enumerate()
        .map(|(r, t)| SparseMatrix::from_triplets(groups[r + 1].len(), groups[r].len(), t))
        .collect::<Result<Vec<_>, _>>()?;
    let stats = d.stats();
    let cx = ChainComplex { groups, differentials, c_plus: stats.c_plus, c_minus: stats.c_minus, state_circles };
    #[cfg(debug_assertions)]
    cx.check_d_squared()?;
    Ok(cx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::factory::torus_diagram;

    #[test]
    fn kink_resolutions() {
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(resolve(&kink, &[false]).unwrap().n_circles(), 2);
        assert_eq!(resolve(&kink, &[true]).unwrap().n_circles(), 1);
        assert_eq!(resolve(&Diagram::unknot(), &[]).unwrap().n_circles(), 1);
        assert_eq!(
            resolve(&kink, &[]).unwrap_err(),
            ComputeError::StateLength { expected: 1, got: 0 }
        );
    }

    #[test]
    fn changing_one_bit_changes_circles_by_one() {
        let d = torus_diagram(3, 3).unwrap();
        let n = d.n_crossings();
        for s in 0..(1u32 << n) {
            let bits: Vec<bool> = (0..n).map(|x| s >> x & 1 == 1).collect();
            let c = resolve(&d, &bits).unwrap().n_circles() as i64;
            for x in 0..n {
                let mut b2 = bits.clone();
                b2[x] = !b2[x];
                let c2 = resolve(&d, &b2).unwrap().n_circles() as i64;
                assert_eq!((c - c2).abs(), 1);
            }
        }
    }

    #[test]
    fn cube_dimensions() {
        let u = build_cube(&Diagram::unknot(), DEFAULT_NAIVE_LIMIT).unwrap();
        assert_eq!(u.group_dims(), vec![2]);
        assert!(u.differentials.is_empty());

        let hopf = build_cube(&torus_diagram(2, 2).unwrap(), DEFAULT_NAIVE_LIMIT).unwrap();
        // circle counts 2, 1, 1, 2 over the four states
        assert_eq!(hopf.group_dims(), vec![4, 2 + 2, 4]);
        assert!(hopf.preserves_quantum_grading());

        let kink = build_cube(&parse_pd("X[1,1,2,2]").unwrap(), DEFAULT_NAIVE_LIMIT).unwrap();
        assert_eq!(kink.group_dims(), vec![4, 2]);
    }

    #[test]
    fn crossing_limit_is_enforced() {
        let d = torus_diagram(2, 5).unwrap();
        assert_eq!(build_cube(&d, 4).unwrap_err(), ComputeError::CrossingLimit { crossings: 5, limit: 4 });
    }

    #[test]
    fn euler_characteristic_of_unlinks() {
        let u = build_cube(&Diagram::unknot(), DEFAULT_NAIVE_LIMIT).unwrap();
        assert_eq!(u.euler_characteristic(), LaurentPoly::circle());
        let u2 = build_cube(&Diagram::unlink(2), DEFAULT_NAIVE_LIMIT).unwrap();
        assert_eq!(u2.euler_characteristic(), LaurentPoly::circle().pow(2));
    }

    #[test]
    fn d_squared_vanishes_with_extra_circles() {
        let d = crate::factory::disjoint_union(&torus_diagram(2, 3).unwrap(), &Diagram::unknot());
        let cx = build_cube(&d, DEFAULT_NAIVE_LIMIT).unwrap();
        cx.check_d_squared().unwrap();
        assert!(cx.preserves_quantum_grading());
    }
}
