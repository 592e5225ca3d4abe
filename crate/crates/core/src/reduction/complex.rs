//! Complexes over crossingless tangles with dotted-cobordism differentials.
//!
//! A morphism `T1 -> T2` is a rational combination of dot placements on the
//! loops of `T1 ∪ T2`, each loop carrying at most one dot. Bits `0..B` index
//! boundary loops by their smallest point, then come the closed circles of
//! `T1`, then those of `T2`.

use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::{FxHashMap, FxHashSet};

use crate::error::ComputeError;
use crate::linalg::Rational;

use super::surface::{Shape, ShapeBuilder};
use super::tangle::{loop_roots, Tangle, TangleStore};

/// Linear combination of dotted cobordisms, sorted by dot mask.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Morphism {
    terms: Vec<(u128, Rational)>,
}

impl Morphism {
    pub fn zero() -> Self {
        Morphism { terms: Vec::new() }
    }

    pub fn scalar(c: Rational) -> Self {
        let mut m = Morphism::zero();
        m.add_term(0, c);
        m
    }

    pub fn identity() -> Self {
        Morphism::scalar(Rational::one())
    }

    pub fn terms(&self) -> &[(u128, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u128, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&mask, |t| t.0) {
            Ok(i) => {
                let s = &self.terms[i].1 + &c;
                if s.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => self.terms.insert(i, (mask, c)),
        }
    }

    pub fn add(&mut self, other: &Morphism) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> Morphism {
        if c.is_zero() {
            return Morphism::zero();
        }
        Morphism { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// The coefficient if this is a multiple of the undotted cobordism.
    pub fn as_scalar(&self) -> Option<&Rational> {
        match self.terms.as_slice() {
            [(0, c)] => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub tangle: u32,
    /// Homological degree before normalisation (number of 1-smoothings).
    pub h: i32,
    /// Quantum shift before normalisation.
    pub q: i32,
}

/// Shape of `g ∘ f` for `f: T1 -> T2`, `g: T2 -> T3`.
pub(crate) fn composition_shape(t1: &Tangle, t2: &Tangle, t3: &Tangle) -> Shape {
    let b = t1.boundary_len();
    let (c1, c2, c3) = (t1.circles as usize, t2.circles as usize, t3.circles as usize);
    let r12 = loop_roots(t1, t2);
    let r23 = loop_roots(t2, t3);
    let r13 = loop_roots(t1, t3);
    let mut sb = ShapeBuilder::new();
    let mut fp = vec![usize::MAX; b];
    let mut gp = vec![usize::MAX; b];
    let mut f_in = Vec::new();
    let mut g_in = Vec::new();
    for p in 0..b {
        if r12[p] as usize == p {
            fp[p] = sb.piece();
            f_in.push((p, fp[p]));
        }
        if r23[p] as usize == p {
            gp[p] = sb.piece();
            g_in.push((p, gp[p]));
        }
    }
    let f_c1: Vec<usize> = (0..c1).map(|_| sb.piece()).collect();
    let f_c2: Vec<usize> = (0..c2).map(|_| sb.piece()).collect();
    let g_c2: Vec<usize> = (0..c2).map(|_| sb.piece()).collect();
    let g_c3: Vec<usize> = (0..c3).map(|_| sb.piece()).collect();
    for (i, &x) in f_c1.iter().enumerate() {
        f_in.push((b + i, x));
    }
    for (j, &x) in f_c2.iter().enumerate() {
        f_in.push((b + c1 + j, x));
    }
    for (j, &x) in g_c2.iter().enumerate() {
        g_in.push((b + j, x));
    }
    for (k, &x) in g_c3.iter().enumerate() {
        g_in.push((b + c2 + k, x));
    }
    for (p, _) in t2.arcs() {
        sb.glue(fp[r12[p] as usize], gp[r23[p] as usize], 1);
    }
    for j in 0..c2 {
        sb.glue(f_c2[j], g_c2[j], 0);
    }
    let mut outputs = Vec::new();
    for p in 0..b {
        if r13[p] as usize == p {
            outputs.push((p, fp[r12[p] as usize]));
        }
    }
    for (i, &x) in f_c1.iter().enumerate() {
        outputs.push((b + i, x));
    }
    for (k, &x) in g_c3.iter().enumerate() {
        outputs.push((b + c1 + k, x));
    }
    sb.finish(&[f_in, g_in], &outputs)
}

fn apply_shape(shape: &Shape, f: &Morphism, g: &Morphism) -> Morphism {
    let mut out = Morphism::zero();
    for (fm, fc) in f.terms() {
        for (gm, gc) in g.terms() {
            shape.apply(&[*fm, *gm], &(fc * gc), &mut out);
        }
    }
    out
}

/// A complex of crossingless tangles on a fixed boundary.
#[derive(Clone, Debug, Default)]
pub struct LocalComplex {
    tangles: TangleStore,
    objects: Vec<Option<Object>>,
    out: Vec<FxHashMap<u32, Morphism>>,
    inc: Vec<FxHashSet<u32>>,
    live: usize,
    shapes: FxHashMap<(u32, u32, u32), Rc<Shape>>,
}

impl LocalComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tangle(&self, id: u32) -> &Tangle {
        self.tangles.get(id)
    }

    pub fn add_object(&mut self, tangle: Tangle, h: i32, q: i32) -> usize {
        let t = self.tangles.intern(tangle);
        self.push_object(Object { tangle: t, h, q })
    }

    pub(crate) fn push_object(&mut self, o: Object) -> usize {
        self.objects.push(Some(o));
        self.out.push(FxHashMap::default());
        self.inc.push(FxHashSet::default());
        self.live += 1;
        self.objects.len() - 1
    }

    pub(crate) fn intern(&mut self, t: Tangle) -> u32 {
        self.tangles.intern(t)
    }

    /// Adds `m` to the component `src -> tgt` of the differential.
    pub fn add_morphism(&mut self, src: usize, tgt: usize, m: &Morphism) {
        if m.is_zero() {
            return;
        }
        let e = self.out[src].entry(tgt as u32).or_default();
        e.add(m);
        if e.is_zero() {
            self.out[src].remove(&(tgt as u32));
            self.inc[tgt].remove(&(src as u32));
        } else {
            self.inc[tgt].insert(src as u32);
        }
    }

    pub fn morphism(&self, src: usize, tgt: usize) -> Option<&Morphism> {
        self.out[src].get(&(tgt as u32))
    }

    pub fn object(&self, i: usize) -> Option<&Object> {
        self.objects[i].as_ref()
    }

    /// Live objects with their indices, in index order.
    pub fn objects(&self) -> impl Iterator<Item = (usize, &Object)> {
        self.objects.iter().enumerate().filter_map(|(i, o)| o.as_ref().map(|o| (i, o)))
    }

    /// Outgoing components of `src`, sorted by target.
    pub fn outgoing(&self, src: usize) -> Vec<(usize, &Morphism)> {
        let mut v: Vec<_> = self.out[src].iter().map(|(t, m)| (*t as usize, m)).collect();
        v.sort_by_key(|x| x.0);
        v
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn n_entries(&self) -> usize {
        self.out.iter().map(|m| m.len()).sum()
    }

    pub fn differential_is_zero(&self) -> bool {
        self.out.iter().all(|m| m.is_empty())
    }

    fn shape(&mut self, t1: u32, t2: u32, t3: u32) -> Rc<Shape> {
        let tangles = &self.tangles;
        self.shapes
            .entry((t1, t2, t3))
            .or_insert_with(|| Rc::new(composition_shape(tangles.get(t1), tangles.get(t2), tangles.get(t3))))
            .clone()
    }

    /// `g ∘ f` where `f` ends and `g` starts at an object with tangle `mid`.
    pub fn compose(&mut self, t1: u32, mid: u32, t3: u32, f: &Morphism, g: &Morphism) -> Morphism {
        let shape = self.shape(t1, mid, t3);
        apply_shape(&shape, f, g)
    }

    /// Checks that the differential squares to zero and raises `h` by one.
    pub fn check_d_squared(&mut self) -> bool {
        let n = self.objects.len();
        for a in 0..n {
            let Some(oa) = self.objects[a].clone() else { continue };
            let mut total: FxHashMap<u32, Morphism> = FxHashMap::default();
            for (b, f) in self.outgoing(a).into_iter().map(|(b, f)| (b, f.clone())).collect::<Vec<_>>() {
                let ob = self.objects[b].clone().unwrap();
                if ob.h != oa.h + 1 {
                    return false;
                }
                for (c, g) in self.outgoing(b).into_iter().map(|(c, g)| (c, g.clone())).collect::<Vec<_>>() {
                    let tc = self.objects[c].as_ref().unwrap().tangle;
                    let gf = self.compose(oa.tangle, ob.tangle, tc, &f, &g);
                    total.entry(c as u32).or_default().add(&gf);
                }
            }
            if total.values().any(|m| !m.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Replaces every closed circle by a pair of shifted copies of the
    /// object without it (`v+` with q+1, `v-` with q-1).
    pub fn deloop(&self) -> LocalComplex {
        let mut next = LocalComplex::new();
        let n = self.objects.len();
        // expanded[a] = (first new index, number of circles)
        let mut expanded = vec![(usize::MAX, 0usize); n];
        for a in 0..n {
            let Some(o) = &self.objects[a] else { continue };
            let t = self.tangles.get(o.tangle);
            let c = t.circles as usize;
            let base = next.tangles.intern(t.without_circles());
            let first = next.objects.len();
            for lam in 0..(1u32 << c) {
                let minus = lam.count_ones() as i32;
                next.push_object(Object { tangle: base, h: o.h, q: o.q + (c as i32 - minus) - minus });
            }
            expanded[a] = (first, c);
        }
        for a in 0..n {
            if self.objects[a].is_none() {
                continue;
            }
            let (fa, ca) = expanded[a];
            let b_len = self.tangles.get(self.objects[a].as_ref().unwrap().tangle).boundary_len();
            let bmask: u128 = if b_len == 0 { 0 } else { (1u128 << b_len) - 1 };
            for (b, m) in self.outgoing(a) {
                let (fb, cb) = expanded[b];
                let mut parts: FxHashMap<(u32, u32), Morphism> = FxHashMap::default();
                for (mask, coeff) in m.terms() {
                    // source circle: dotted feeds v+, undotted feeds v-
                    let src_bits = ((mask >> b_len) as u32) & ((1u32 << ca) - 1);
                    let lam = !src_bits & ((1u32 << ca) - 1);
                    // target circle: dotted lands in v-, undotted in v+
                    let mu = ((mask >> (b_len + ca)) as u32) & ((1u32 << cb) - 1);
                    parts.entry((lam, mu)).or_default().add_term(mask & bmask, coeff.clone());
                }
                let mut keys: Vec<_> = parts.keys().copied().collect();
                keys.sort_unstable();
                for k in keys {
                    let part = &parts[&k];
                    next.add_morphism(fa + k.0 as usize, fb + k.1 as usize, part);
                }
            }
        }
        next
    }

    fn is_iso(&self, a: usize, b: usize) -> bool {
        let (Some(oa), Some(ob)) = (&self.objects[a], &self.objects[b]) else { return false };
        oa.tangle == ob.tangle
            && oa.q == ob.q
            && self.tangles.get(oa.tangle).circles == 0
            && self.morphism(a, b).and_then(|m| m.as_scalar()).is_some()
    }

    fn remove_object(&mut self, a: usize) {
        let outs: Vec<u32> = self.out[a].keys().copied().collect();
        for t in outs {
            self.inc[t as usize].remove(&(a as u32));
        }
        let ins: Vec<u32> = self.inc[a].iter().copied().collect();
        for s in ins {
            self.out[s as usize].remove(&(a as u32));
        }
        self.out[a] = FxHashMap::default();
        self.inc[a] = FxHashSet::default();
        self.objects[a] = None;
        self.live -= 1;
    }

    /// Cancels the isomorphism `a -> b`, returning the entries it touched.
    pub fn gauss_cancel(&mut self, a: usize, b: usize) -> Result<Vec<(usize, usize)>, ComputeError> {
        if !self.is_iso(a, b) {
            return Err(ComputeError::NotInvertible { src: a, tgt: b });
        }
        let inv = self.morphism(a, b).unwrap().as_scalar().unwrap().recip();
        let tb = self.objects[b].as_ref().unwrap().tangle;
        let sources: Vec<(usize, Morphism)> = {
            let mut v: Vec<usize> = self.inc[b].iter().map(|&x| x as usize).filter(|&x| x != a).collect();
            v.sort_unstable();
            v.into_iter().map(|x| (x, self.out[x][&(b as u32)].clone())).collect()
        };
        let targets: Vec<(usize, Morphism)> =
            self.outgoing(a).into_iter().filter(|(y, _)| *y != b).map(|(y, m)| (y, m.scaled(&inv))).collect();
        let mut touched = Vec::with_capacity(sources.len() * targets.len());
        for (x, delta) in &sources {
            let tx = self.objects[*x].as_ref().unwrap().tangle;
            for (y, gamma) in &targets {
                let ty = self.objects[*y].as_ref().unwrap().tangle;
                let gd = self.compose(tx, tb, ty, delta, gamma);
                if gd.is_zero() {
                    continue;
                }
                self.add_morphism(*x, *y, &gd.scaled(&Rational::from_integer(-1)));
                touched.push((*x, *y));
            }
        }
        self.remove_object(a);
        self.remove_object(b);
        Ok(touched)
    }

    /// Cancels isomorphisms until none remain: unit coefficients first,
    /// then the least fill-in `(in(b) - 1)(out(a) - 1)`, then lowest index.
    pub fn reduce(&mut self) -> Result<(), ComputeError> {
        let mut queue: BTreeSet<(bool, usize, usize, usize)> = BTreeSet::new();
        for a in 0..self.objects.len() {
            for (b, _) in self.outgoing(a) {
                self.enqueue(&mut queue, a, b);
            }
        }
        while let Some((unit, cost, a, b)) = queue.pop_first() {
            if !self.is_iso(a, b) {
                continue;
            }
            let now = self.fill_cost(a, b);
            if now > cost {
                queue.insert((unit, now, a, b));
                continue;
            }
            for (x, y) in self.gauss_cancel(a, b)? {
                self.enqueue(&mut queue, x, y);
            }
        }
        Ok(())
    }

    fn fill_cost(&self, a: usize, b: usize) -> usize {
        (self.inc[b].len() - 1) * (self.out[a].len() - 1)
    }

    fn enqueue(&self, queue: &mut BTreeSet<(bool, usize, usize, usize)>, a: usize, b: usize) {
        if self.is_iso(a, b) {
            let unit = self.morphism(a, b).unwrap().as_scalar().unwrap().is_unit_magnitude();
            queue.insert((!unit, self.fill_cost(a, b), a, b));
        }
    }

    /// Rebuilds the complex without dead slots.
    pub fn compacted(&self) -> LocalComplex {
        let mut next = LocalComplex::new();
        let mut map = vec![usize::MAX; self.objects.len()];
        for (i, o) in self.objects() {
            let t = next.tangles.intern(self.tangles.get(o.tangle).clone());
            map[i] = next.push_object(Object { tangle: t, h: o.h, q: o.q });
        }
        for (i, _) in self.objects() {
            for (j, m) in self.outgoing(i) {
                next.add_morphism(map[i], map[j], m);
            }
        }
        next
    }
}
