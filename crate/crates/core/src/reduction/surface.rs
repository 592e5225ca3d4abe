//! Evaluation of dotted surfaces glued from disk-like pieces.
//!
//! Over the rationals with the relations sphere = 0, dotted sphere = 1,
//! two dots = 0 and the neck-cutting relation, a connected surface of genus
//! `g` with `e = g + dots` reduces to: zero if `e >= 2`; `2^g` times the
//! surface with every boundary circle dotted if `e = 1`; the sum over
//! boundary circles of the disk family with that circle undotted and the
//! others dotted if `e = 0` (zero when there is no boundary).

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Rational;

use super::Morphism;

/// Accumulates pieces and gluings, then freezes into a [`Shape`].
#[derive(Debug, Clone)]
pub struct ShapeBuilder {
    parent: Vec<usize>,
    chi: Vec<i64>,
}

impl ShapeBuilder {
    pub fn new() -> Self {
        ShapeBuilder { parent: Vec::new(), chi: Vec::new() }
    }

    /// Adds a disk-like piece (Euler characteristic 1).
    pub fn piece(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.chi.push(1);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Glues two pieces along a segment (`loss = 1`) or a circle (`loss = 0`).
    pub fn glue(&mut self, a: usize, b: usize, loss: i64) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            self.chi[ra] -= loss;
        } else {
            self.parent[rb] = ra;
            let c = self.chi[rb];
            self.chi[ra] += c - loss;
        }
    }

    /// `inputs[s][bit]` names the piece carrying input bit `bit` of side `s`;
    /// `outputs` lists `(bit, piece)` for the boundary circles of the result.
    pub fn finish(mut self, inputs: &[Vec<(usize, usize)>], outputs: &[(usize, usize)]) -> Shape {
        let n = self.parent.len();
        let mut comp_of_root = vec![usize::MAX; n];
        let mut comps: Vec<Component> = Vec::new();
        for p in 0..n {
            let r = self.find(p);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = comps.len();
                comps.push(Component { genus: 0, out_bits: 0, chi: self.chi[r] });
            }
        }
        let mut boundary = vec![0i64; comps.len()];
        for &(bit, piece) in outputs {
            let c = comp_of_root[self.find(piece)];
            comps[c].out_bits |= 1u128 << bit;
            boundary[c] += 1;
        }
        for (c, comp) in comps.iter_mut().enumerate() {
            let g2 = 2 - comp.chi - boundary[c];
            debug_assert!(g2 >= 0 && g2 % 2 == 0, "bad surface: chi {} b {}", comp.chi, boundary[c]);
            comp.genus = (g2 / 2) as u32;
        }
        let mut side_masks = Vec::with_capacity(inputs.len());
        for side in inputs {
            let mut masks = vec![0u128; comps.len()];
            for &(bit, piece) in side {
                let c = comp_of_root[self.find(piece)];
                masks[c] |= 1u128 << bit;
            }
            side_masks.push(masks);
        }
        Shape { comps, side_masks }
    }
}

impl Default for ShapeBuilder {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone)]
struct Component {
    genus: u32,
    out_bits: u128,
    chi: i64,
}

/// A frozen gluing pattern, evaluated for any choice of input dots.
#[derive(Debug, Clone)]
pub struct Shape {
    comps: Vec<Component>,
    side_masks: Vec<Vec<u128>>,
}

impl Shape {
    /// Adds `coeff` times the surface with dots `dots[s]` on side `s` to `out`.
    pub fn apply(&self, dots: &[u128], coeff: &Rational, out: &mut Morphism) {
        let mut fixed = 0u128;
        let mut factor: u64 = 1;
        let mut choices: Vec<u128> = Vec::new();
        for (c, comp) in self.comps.iter().enumerate() {
            let mut d = 0u32;
            for (s, masks) in self.side_masks.iter().enumerate() {
                d += (dots[s] & masks[c]).count_ones();
            }
            match comp.genus + d {
                0 => {
                    if comp.out_bits == 0 {
                        return;
                    }
                    if comp.out_bits.count_ones() == 1 {
                        continue;
                    }
                    choices.push(comp.out_bits);
                }
                1 => {
                    fixed |= comp.out_bits;
                    factor <<= comp.genus;
                }
                _ => return,
            }
        }
        let coeff = if factor == 1 { coeff.clone() } else { coeff * &Rational::from_integer(factor as i64) };
        expand(fixed, &choices, &coeff, out);
    }
}

fn expand(fixed: u128, choices: &[u128], coeff: &Rational, out: &mut Morphism) {
    match choices.split_first() {
        None => out.add_term(fixed, coeff.clone()),
        Some((&bits, rest)) => {
            let mut b = bits;
            while b != 0 {
                let low = b & b.wrapping_neg();
                expand(fixed | (bits & !low), rest, coeff, out);
                b &= !low;
            }
        }
    }
}
