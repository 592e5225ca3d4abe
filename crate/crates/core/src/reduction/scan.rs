//! Crossing-by-crossing computation of Khovanov homology.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::FxHashMap;

use crate::diagram::{Crossing, Diagram, EdgeLabel};
use crate::error::ComputeError;
use crate::linalg::Rational;

use super::complex::{LocalComplex, Morphism, Object};
use super::surface::{Shape, ShapeBuilder};
use super::tangle::{loop_roots, Tangle};

/// Default ceiling on live generators.
pub const DEFAULT_CEILING: usize = 10_000_000;

const MAX_LOOP_BITS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub ceiling: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { ceiling: DEFAULT_CEILING }
    }
}

/// Snapshot reported after each crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanProgress {
    pub processed: usize,
    pub total: usize,
    pub live: usize,
    pub peak_live: usize,
    pub boundary: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    /// Betti numbers keyed by normalised `(i, j)`.
    pub betti: BTreeMap<(i64, i64), u64>,
    pub peak_live: usize,
    pub max_boundary: usize,
    pub order: Vec<usize>,
}

fn boundary_sizes(crossings: &[Crossing], order: &[usize]) -> Vec<usize> {
    let mut seen: BTreeMap<EdgeLabel, u8> = BTreeMap::new();
    let mut open = 0usize;
    let mut sizes = Vec::with_capacity(order.len());
    for &x in order {
        for &l in &crossings[x].pd {
            let c = seen.entry(l).or_insert(0);
            *c += 1;
            if *c == 1 {
                open += 1;
            } else {
                open -= 1;
            }
        }
        sizes.push(open);
    }
    sizes
}

/// Greedy processing order: from every starting crossing, repeatedly take
/// the crossing that leaves the smallest open boundary; keep the start whose
/// order has the smallest peak (then total) boundary.
pub fn crossing_order(d: &Diagram) -> Vec<usize> {
    let crossings = d.crossings();
    let n = crossings.len();
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for start in 0..n {
        let mut count: FxHashMap<EdgeLabel, u8> = FxHashMap::default();
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut open: i64 = 0;
        let take = |x: usize, count: &mut FxHashMap<EdgeLabel, u8>, open: &mut i64| {
            for &l in &crossings[x].pd {
                let c = count.entry(l).or_insert(0);
                *c += 1;
                *open += if *c == 1 { 1 } else { -1 };
            }
        };
        take(start, &mut count, &mut open);
        done[start] = true;
        order.push(start);
        for _ in 1..n {
            let mut pick = (i64::MAX, usize::MAX);
            for x in 0..n {
                if done[x] {
                    continue;
                }
                let mut delta = 0i64;
                let pd = &crossings[x].pd;
                for (k, &l) in pd.iter().enumerate() {
                    let c = count.get(&l).copied().unwrap_or(0);
                    let twice = pd[..k].contains(&l);
                    delta += if c == 1 || twice { -1 } else { 1 };
                }
                if delta < pick.0 {
                    pick = (delta, x);
                }
            }
            take(pick.1, &mut count, &mut open);
            done[pick.1] = true;
            order.push(pick.1);
        }
        let sizes = boundary_sizes(crossings, &order);
        let peak = sizes.iter().copied().max().unwrap_or(0);
        let total: usize = sizes.iter().sum();
        if best.as_ref().is_none_or(|b| (peak, total) < (b.0, b.1)) {
            best = Some((peak, total, order));
        }
    }
    best.map(|b| b.2).unwrap_or_default()
}

fn smoothing_partner(eps: usize, k: usize) -> usize {
    match (eps, k) {
        (0, 0) => 1,
        (0, 1) => 0,
        (0, 2) => 3,
        (0, 3) => 2,
        (_, 0) => 3,
        (_, 3) => 0,
        (_, 1) => 2,
        _ => 1,
    }
}

fn smoothing_tangle(eps: usize) -> Tangle {
    Tangle { partner: (0..4).map(|k| smoothing_partner(eps, k) as u16).collect(), circles: 0 }
}

/// Boundary bookkeeping for adding one crossing. Points `0..old_b` are the
/// old boundary, `old_b..old_b + 4` the crossing's slots.
struct Step {
    old_b: usize,
    glue: Vec<Option<usize>>,
    new_ext: Vec<usize>,
    new_pos: Vec<Option<u16>>,
    new_boundary: Vec<EdgeLabel>,
}

impl Step {
    fn new(boundary: &[EdgeLabel], x: &Crossing) -> Step {
        let old_b = boundary.len();
        let mut glue = vec![None; old_b + 4];
        for k in 0..4 {
            let l = x.pd[k];
            if let Ok(p) = boundary.binary_search(&l) {
                glue[p] = Some(old_b + k);
                glue[old_b + k] = Some(p);
            } else if let Some(k2) = (0..4).find(|&k2| k2 != k && x.pd[k2] == l) {
                glue[old_b + k] = Some(old_b + k2);
            }
        }
        let label = |e: usize| if e < old_b { boundary[e] } else { x.pd[e - old_b] };
        let mut open: Vec<usize> = (0..old_b + 4).filter(|&e| glue[e].is_none()).collect();
        open.sort_by_key(|&e| label(e));
        let mut new_pos = vec![None; old_b + 4];
        for (i, &e) in open.iter().enumerate() {
            new_pos[e] = Some(i as u16);
        }
        let new_boundary = open.iter().map(|&e| label(e)).collect();
        Step { old_b, glue, new_ext: open, new_pos, new_boundary }
    }

    fn arc(&self, old: &Tangle, eps: usize, e: usize) -> usize {
        if e < self.old_b {
            old.partner[e] as usize
        } else {
            self.old_b + smoothing_partner(eps, e - self.old_b)
        }
    }

    /// The tangle `old ∪ smoothing`, with one representative point per
    /// closed circle.
    fn glue_tangle(&self, old: &Tangle, eps: usize) -> (Tangle, Vec<usize>) {
        let n = self.old_b + 4;
        let mut seen = vec![false; n];
        let mut partner = vec![0u16; self.new_ext.len()];
        for (i, &start) in self.new_ext.iter().enumerate() {
            if seen[start] {
                continue;
            }
            let mut cur = start;
            let end = loop {
                seen[cur] = true;
                let y = self.arc(old, eps, cur);
                seen[y] = true;
                match self.glue[y] {
                    Some(z) => cur = z,
                    None => break y,
                }
            };
            let j = self.new_pos[end].expect("open end") as usize;
            partner[i] = j as u16;
            partner[j] = i as u16;
        }
        let mut reps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            reps.push(start);
            let mut cur = start;
            loop {
                seen[cur] = true;
                let y = self.arc(old, eps, cur);
                seen[y] = true;
                cur = self.glue[y].expect("closed circle");
                if cur == start {
                    break;
                }
            }
        }
        (Tangle { partner, circles: reps.len() as u8 }, reps)
    }

    /// Surface of `f ⊗ ξ` where `f: ta -> tb` and `ξ` is the identity
    /// (`e1 = e2`) or the saddle (`e1 = 0, e2 = 1`) on the crossing.
    fn entry_shape(
        &self,
        ta: &Tangle,
        tb: &Tangle,
        (e1, e2): (usize, usize),
        n1: &(Tangle, Vec<usize>),
        n2: &(Tangle, Vec<usize>),
    ) -> Result<Shape, ComputeError> {
        let nb = self.new_ext.len();
        let bits = nb + n1.1.len() + n2.1.len();
        if bits > MAX_LOOP_BITS {
            return Err(ComputeError::BoundaryTooLarge(bits));
        }
        let mut sb = ShapeBuilder::new();
        let old_roots = loop_roots(ta, tb);
        let x_roots = loop_roots(&smoothing_tangle(e1), &smoothing_tangle(e2));
        let mut old_piece = vec![usize::MAX; self.old_b];
        let mut inputs = Vec::new();
        for p in 0..self.old_b {
            if old_roots[p] as usize == p {
                old_piece[p] = sb.piece();
                inputs.push((p, old_piece[p]));
            }
        }
        let mut x_piece = [usize::MAX; 4];
        for k in 0..4 {
            if x_roots[k] as usize == k {
                x_piece[k] = sb.piece();
            }
        }
        let piece = |e: usize| {
            if e < self.old_b {
                old_piece[old_roots[e] as usize]
            } else {
                x_piece[x_roots[e - self.old_b] as usize]
            }
        };
        for (e, g) in self.glue.iter().enumerate() {
            if let Some(g) = *g {
                if e < g {
                    sb.glue(piece(e), piece(g), 1);
                }
            }
        }
        let new_roots = loop_roots(&n1.0, &n2.0);
        let mut outputs = Vec::new();
        for r in 0..nb {
            if new_roots[r] as usize == r {
                outputs.push((r, piece(self.new_ext[r])));
            }
        }
        for (i, &e) in n1.1.iter().enumerate() {
            outputs.push((nb + i, piece(e)));
        }
        for (j, &e) in n2.1.iter().enumerate() {
            outputs.push((nb + n1.1.len() + j, piece(e)));
        }
        Ok(sb.finish(&[inputs], &outputs))
    }
}

/// Tensors a circle-free complex on `boundary` with the two-term complex
/// of crossing `x`. The result may contain closed circles.
pub fn tensor_crossing(
    cx: &LocalComplex,
    boundary: &[EdgeLabel],
    x: &Crossing,
) -> Result<(LocalComplex, Vec<EdgeLabel>), ComputeError> {
    let step = Step::new(boundary, x);
    let mut next = LocalComplex::new();
    let mut glued: FxHashMap<(u32, usize), (u32, (Tangle, Vec<usize>))> = FxHashMap::default();
    let mut index: FxHashMap<usize, usize> = FxHashMap::default();
    let live: Vec<(usize, Object)> = cx.objects().map(|(i, o)| (i, o.clone())).collect();
    for (a, o) in &live {
        for eps in 0..2 {
            let t = cx.tangle(o.tangle);
            if t.circles != 0 {
                return Err(ComputeError::Invariant("tensoring a complex with closed circles".into()));
            }
            let g = glued.entry((o.tangle, eps)).or_insert_with(|| {
                let n = step.glue_tangle(t, eps);
                (u32::MAX, n)
            });
            if g.0 == u32::MAX {
                g.0 = next.intern(g.1 .0.clone());
            }
            let id = next.push_object(Object { tangle: g.0, h: o.h + eps as i32, q: o.q + eps as i32 });
            if eps == 0 {
                index.insert(*a, id);
            }
        }
    }
    let mut shapes: FxHashMap<(u32, u32, usize, usize), Shape> = FxHashMap::default();
    let mut shape = |ta: u32, tb: u32, e1: usize, e2: usize| -> Result<Shape, ComputeError> {
        if let Some(s) = shapes.get(&(ta, tb, e1, e2)) {
            return Ok(s.clone());
        }
        let s = step.entry_shape(cx.tangle(ta), cx.tangle(tb), (e1, e2), &glued[&(ta, e1)].1, &glued[&(tb, e2)].1)?;
        shapes.insert((ta, tb, e1, e2), s.clone());
        Ok(s)
    };
    for (a, o) in &live {
        let na = index[a];
        for (b, f) in cx.outgoing(*a) {
            let tb = cx.object(b).expect("live target").tangle;
            let nb = index[&b];
            for eps in 0..2 {
                let s = shape(o.tangle, tb, eps, eps)?;
                let mut m = Morphism::zero();
                for (mask, c) in f.terms() {
                    s.apply(&[*mask], c, &mut m);
                }
                next.add_morphism(na + eps, nb + eps, &m);
            }
        }
        let s = shape(o.tangle, o.tangle, 0, 1)?;
        let sign = if o.h % 2 == 0 { Rational::one() } else { Rational::from_integer(-1) };
        let mut m = Morphism::zero();
        s.apply(&[0], &sign, &mut m);
        next.add_morphism(na, na + 1, &m);
    }
    Ok((next, step.new_boundary))
}

/// Rational Khovanov homology of `d`, one crossing at a time.
pub fn scan(
    d: &Diagram,
    config: &ScanConfig,
    progress: &mut dyn FnMut(&ScanProgress),
) -> Result<ScanOutcome, ComputeError> {
    let order = crossing_order(d);
    let total = order.len();
    let mut cx = LocalComplex::new();
    cx.add_object(Tangle { partner: Vec::new(), circles: d.circles() as u8 }, 0, 0);
    let mut cx = cx.deloop();
    let mut boundary: Vec<EdgeLabel> = Vec::new();
    let mut peak_live = cx.live_count();
    let mut max_boundary = 0;
    let check = |live: usize, processed: usize| {
        if live > config.ceiling {
            Err(ComputeError::Ceiling { live, ceiling: config.ceiling, processed })
        } else {
            Ok(())
        }
    };
    check(peak_live, 0)?;
    for (done, &xi) in order.iter().enumerate() {
        let (next, nb) = tensor_crossing(&cx, &boundary, &d.crossings()[xi])?;
        boundary = nb;
        max_boundary = max_boundary.max(boundary.len());
        cx = next.deloop();
        peak_live = peak_live.max(cx.live_count());
        check(cx.live_count(), done + 1)?;
        cx.reduce()?;
        progress(&ScanProgress {
            processed: done + 1,
            total,
            live: cx.live_count(),
            peak_live,
            boundary: boundary.len(),
        });
    }
    if !boundary.is_empty() || !cx.differential_is_zero() {
        return Err(ComputeError::Invariant("reduced closed complex has a nonzero differential".into()));
    }
    let st = d.stats();
    let (cp, cm) = (st.c_plus as i64, st.c_minus as i64);
    let mut betti = BTreeMap::new();
    for (_, o) in cx.objects() {
        *betti.entry((o.h as i64 - cm, o.q as i64 + cp - 2 * cm)).or_insert(0u64) += 1;
    }
    Ok(ScanOutcome { betti, peak_live, max_boundary, order })
}
