//! Crossingless tangles: perfect matchings on an ordered set of boundary
//! points, plus a count of closed circles.

use alloc::vec;
use alloc::vec::Vec;

use super::FxHashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    /// `partner[p]` is the boundary point joined to `p` by an arc.
    pub partner: Vec<u16>,
    pub circles: u8,
}

impl Tangle {
    pub fn empty() -> Self {
        Tangle { partner: Vec::new(), circles: 0 }
    }

    pub fn boundary_len(&self) -> usize {
        self.partner.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|(p, q)| *p < **q as usize)
            .map(|(p, q)| (p, *q as usize))
    }

    pub fn without_circles(&self) -> Tangle {
        Tangle { partner: self.partner.clone(), circles: 0 }
    }
}

/// For two tangles on the same boundary, the smallest point of the loop of
/// `t1 ∪ t2` through each point.
pub fn loop_roots(t1: &Tangle, t2: &Tangle) -> Vec<u16> {
    let n = t1.partner.len();
    debug_assert_eq!(n, t2.partner.len());
    let mut root = vec![u16::MAX; n];
    for start in 0..n {
        if root[start] != u16::MAX {
            continue;
        }
        let mut p = start;
        loop {
            root[p] = start as u16;
            let q = t1.partner[p] as usize;
            root[q] = start as u16;
            p = t2.partner[q] as usize;
            if p == start {
                break;
            }
        }
    }
    root
}

/// Interned tangles of one boundary; equal tangles share an id.
#[derive(Debug, Default, Clone)]
pub struct TangleStore {
    tangles: Vec<Tangle>,
    index: FxHashMap<Tangle, u32>,
}

impl TangleStore {
    pub fn intern(&mut self, t: Tangle) -> u32 {
        if let Some(&id) = self.index.get(&t) {
            return id;
        }
        let id = self.tangles.len() as u32;
        self.tangles.push(t.clone());
        self.index.insert(t, id);
        id
    }

    pub fn get(&self, id: u32) -> &Tangle {
        &self.tangles[id as usize]
    }
}
