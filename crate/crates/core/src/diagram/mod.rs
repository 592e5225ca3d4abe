//! Oriented link diagrams as signed planar-diagram (PD) codes.
//!
//! A crossing is a 4-tuple of edge labels listed counterclockwise starting
//! from the incoming under-strand, so the under-strand always runs from slot
//! 0 to slot 2. The over-strand runs 3 -> 1 on a positive crossing and
//! 1 -> 3 on a negative one.

mod parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::DiagramError;

pub use parse::{diagram_from_tuples, parse_pd, parse_pd_with_orientation};

pub type EdgeLabel = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub pd: [EdgeLabel; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(pd: [EdgeLabel; 4], sign: Sign) -> Self {
        Crossing { pd, sign }
    }

    /// Slot through which the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    /// Whether the edge at `slot` flows into this crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramStats {
    pub c_plus: usize,
    pub c_minus: usize,
    pub writhe: i64,
    pub n_components: usize,
}

/// An oriented link diagram. Immutable once built.
#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    circles: usize,
    name: Option<String>,
    labels: Vec<EdgeLabel>,
    successor: Vec<usize>,
    edge_component: Vec<usize>,
    n_edge_components: usize,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.circles == other.circles
    }
}

impl Eq for Diagram {}

impl Diagram {
    /// Builds a diagram from crossings whose signs are already known, plus a
    /// number of crossingless circle components.
    pub fn from_crossings(crossings: Vec<Crossing>, circles: usize) -> Result<Self, DiagramError> {
        let labels = edge_labels(&crossings)?;
        let idx = |l: EdgeLabel| labels.binary_search(&l).unwrap();
        let n = labels.len();
        // For each edge: the (crossing, slot) it flows into and out of.
        let mut head: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut tail: Vec<Option<(usize, usize)>> = vec![None; n];
        for (x, c) in crossings.iter().enumerate() {
            for (s, &l) in c.pd.iter().enumerate() {
                let e = idx(l);
                let slot_ref = if c.is_incoming(s) { &mut head[e] } else { &mut tail[e] };
                if slot_ref.is_some() {
                    return Err(DiagramError::Inconsistent(format!(
                        "edge {} is {} at two crossing slots",
                        l,
                        if c.is_incoming(s) { "incoming" } else { "outgoing" }
                    )));
                }
                *slot_ref = Some((x, s));
            }
        }
        let mut successor = vec![0usize; n];
        for e in 0..n {
            let (x, s) = head[e].expect("multiplicity checked");
            successor[e] = idx(crossings[x].pd[(s + 2) % 4]);
        }
        let mut edge_component = vec![usize::MAX; n];
        let mut n_edge_components = 0;
        for start in 0..n {
            if edge_component[start] != usize::MAX {
                continue;
            }
            let mut e = start;
            while edge_component[e] == usize::MAX {
                edge_component[e] = n_edge_components;
                e = successor[e];
            }
            n_edge_components += 1;
        }
        let d = Diagram { crossings, circles, name: None, labels, successor, edge_component, n_edge_components };
        let (faces, graph_components) = d.face_count();
        let expected = d.crossings.len() + 2 * graph_components;
        if faces != expected {
            return Err(DiagramError::NonPlanar { faces, expected });
        }
        Ok(d)
    }

    /// Face of each corner `4 x + s`, the region between slots `s` and
    /// `s + 1` of crossing `x`.
    pub fn corner_faces(&self) -> Vec<usize> {
        self.faces_and_count().0
    }

    fn faces_and_count(&self) -> (Vec<usize>, usize) {
        let slots = self.edge_slots();
        let n = self.crossings.len();
        let mut face = vec![usize::MAX; 4 * n];
        let mut count = 0;
        for start in 0..4 * n {
            if face[start] != usize::MAX {
                continue;
            }
            let mut cur = start;
            while face[cur] == usize::MAX {
                face[cur] = count;
                let (x, s) = (cur / 4, cur % 4);
                let s1 = (s + 1) % 4;
                let ends = slots[&self.crossings[x].pd[s1]];
                let (x2, t) = if ends[0] == (x, s1) { ends[1] } else { ends[0] };
                cur = 4 * x2 + t;
            }
            count += 1;
        }
        (face, count)
    }

    /// Number of faces and of connected components of the crossing graph.
    fn face_count(&self) -> (usize, usize) {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for ends in self.edge_slots().values() {
            let (a, b) = (find(&mut parent, ends[0].0), find(&mut parent, ends[1].0));
            parent[a] = b;
        }
        let graph_components = (0..n).filter(|&x| find(&mut parent, x) == x).count();
        (self.faces_and_count().1, graph_components)
    }

    /// The zero-crossing unlink with `n` components.
    pub fn unlink(n: usize) -> Self {
        Diagram::from_crossings(Vec::new(), n).expect("empty diagram is valid")
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn n_components(&self) -> usize {
        self.n_edge_components + self.circles
    }

    pub fn edge_labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn max_label(&self) -> EdgeLabel {
        self.labels.last().copied().unwrap_or(0)
    }

    fn edge_index(&self, label: EdgeLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// The edge following `label` along the orientation.
    pub fn next_edge(&self, label: EdgeLabel) -> Option<EdgeLabel> {
        self.edge_index(label).map(|e| self.labels[self.successor[e]])
    }

    /// Component index of an edge. Components carrying crossings are indexed
    /// first (ordered by their smallest edge label), crossingless circles last.
    pub fn component_of_edge(&self, label: EdgeLabel) -> Option<usize> {
        self.edge_index(label).map(|e| self.edge_component[e])
    }

    /// Component indices of the under- and over-strand at crossing `x`.
    pub fn crossing_components(&self, x: usize) -> (usize, usize) {
        let c = &self.crossings[x];
        let comp = |l| self.component_of_edge(l).unwrap();
        (comp(c.pd[0]), comp(c.pd[1]))
    }

    pub fn stats(&self) -> DiagramStats {
        let c_plus = self.crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        let c_minus = self.crossings.len() - c_plus;
        DiagramStats {
            c_plus,
            c_minus,
            writhe: c_plus as i64 - c_minus as i64,
            n_components: self.n_components(),
        }
    }

    pub fn writhe(&self) -> i64 {
        self.stats().writhe
    }

    fn check_component(&self, k: usize) -> Result<(), DiagramError> {
        if k >= self.n_components() {
            return Err(DiagramError::ComponentOutOfRange { index: k, count: self.n_components() });
        }
        Ok(())
    }

    /// Half the signed count of crossings between components `a` and `b`.
    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64, DiagramError> {
        self.check_component(a)?;
        self.check_component(b)?;
        if a == b {
            return Err(DiagramError::SelfLinking);
        }
        let twice: i64 = (0..self.crossings.len())
            .filter(|&x| {
                let (u, o) = self.crossing_components(x);
                (u == a && o == b) || (u == b && o == a)
            })
            .map(|x| self.crossings[x].sign.value())
            .sum();
        debug_assert!(twice % 2 == 0, "inter-component crossings come in pairs");
        Ok(twice / 2)
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.pd;
                // The old over-strand becomes the under-strand; rotate so the
                // tuple starts at its incoming edge.
                let pd = match c.sign {
                    Sign::Positive => [d, a, b, cc],
                    Sign::Negative => [b, cc, d, a],
                };
                Crossing::new(pd, c.sign.flip())
            })
            .collect();
        let mut out = Diagram::from_crossings(crossings, self.circles).expect("mirror preserves validity");
        out.name = self.name.as_ref().map(|n| mirror_name(n));
        out
    }

    /// Reverses the orientation of component `k`.
    pub fn reverse_component(&self, k: usize) -> Result<Diagram, DiagramError> {
        self.check_component(k)?;
        let crossings = (0..self.crossings.len())
            .map(|x| {
                let c = self.crossings[x];
                let (u, o) = self.crossing_components(x);
                let under_rev = u == k;
                let over_rev = o == k;
                let pd = if under_rev {
                    let [a, b, cc, d] = c.pd;
                    [cc, d, a, b]
                } else {
                    c.pd
                };
                let sign = if under_rev != over_rev { c.sign.flip() } else { c.sign };
                Crossing::new(pd, sign)
            })
            .collect();
        let mut out = Diagram::from_crossings(crossings, self.circles)?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Same diagram with edges relabelled `1..=n`, increasing along each
    /// component. Components are visited in index order, each starting from
    /// its smallest label.
    pub fn relabelled(&self) -> Diagram {
        let n = self.labels.len();
        let mut new_label = vec![0u32; n];
        let mut next = 1u32;
        for e0 in 0..n {
            if new_label[e0] != 0 {
                continue;
            }
            let mut e = e0;
            while new_label[e] == 0 {
                new_label[e] = next;
                next += 1;
                e = self.successor[e];
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let pd = c.pd.map(|l| new_label[self.edge_index(l).unwrap()]);
                Crossing::new(pd, c.sign)
            })
            .collect();
        let mut out = Diagram::from_crossings(crossings, self.circles).expect("relabelling preserves validity");
        out.name = self.name.clone();
        out
    }

    /// Returns a copy with every edge label increased by `offset`.
    pub fn shifted(&self, offset: EdgeLabel) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing::new(c.pd.map(|l| l + offset), c.sign))
            .collect();
        let mut out = Diagram::from_crossings(crossings, self.circles).expect("shift preserves validity");
        out.name = self.name.clone();
        out
    }

    /// PD text in the grammar accepted by [`parse_pd`].
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.pd[0], c.pd[1], c.pd[2], c.pd[3]))
            .collect();
        if self.circles > 0 {
            parts.push(format!("U{}", self.circles));
        }
        parts.join(" ")
    }

    /// Explicit `(edge, crossing it flows into)` pairs for components that
    /// never pass under a crossing, whose direction the bare PD cannot fix.
    pub fn orientation_hints(&self) -> Vec<(EdgeLabel, usize)> {
        let mut has_under = vec![false; self.n_edge_components];
        for c in &self.crossings {
            has_under[self.component_of_edge(c.pd[0]).unwrap()] = true;
        }
        let mut hints = Vec::new();
        let mut seen = vec![false; self.n_edge_components];
        for e in 0..self.labels.len() {
            let k = self.edge_component[e];
            if !has_under[k] && !seen[k] {
                seen[k] = true;
                let l = self.labels[e];
                let x = self.crossings.iter().enumerate().find_map(|(x, c)| {
                    (0..4).find(|&s| c.pd[s] == l && c.is_incoming(s)).map(|_| x)
                });
                hints.push((l, x.expect("every edge flows into a crossing")));
            }
        }
        hints
    }

    /// Crossing-level structure: for each edge label, the two (crossing,
    /// slot) positions where it ends.
    pub fn edge_slots(&self) -> BTreeMap<EdgeLabel, [(usize, usize); 2]> {
        let mut map: BTreeMap<EdgeLabel, Vec<(usize, usize)>> = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            for (s, &l) in c.pd.iter().enumerate() {
                map.entry(l).or_default().push((x, s));
            }
        }
        map.into_iter().map(|(l, v)| (l, [v[0], v[1]])).collect()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

pub(crate) fn mirror_name(name: &str) -> String {
    match name.strip_prefix('m') {
        Some(base) if !base.is_empty() => String::from(base),
        _ => format!("m{name}"),
    }
}

fn edge_labels(crossings: &[Crossing]) -> Result<Vec<EdgeLabel>, DiagramError> {
    let mut counts: BTreeMap<EdgeLabel, usize> = BTreeMap::new();
    for c in crossings {
        for &l in &c.pd {
            if l == 0 {
                return Err(DiagramError::ZeroLabel);
            }
            *counts.entry(l).or_default() += 1;
        }
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &n)| n != 2) {
        return Err(DiagramError::EdgeMultiplicity { label, count });
    }
    Ok(counts.into_keys().collect())
}

#[cfg(test)]
mod tests;
