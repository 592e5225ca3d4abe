//! PD text: `X[a,b,c,d]` entries separated by commas or whitespace, `U<n>`
//! for `n` crossingless circles, optionally wrapped in `PD[...]`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{Crossing, Diagram, EdgeLabel, Sign};
use crate::error::DiagramError;

pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    parse_pd_with_orientation(text, &[])
}

/// Parses PD text. `orientation` lists `(edge, crossing index)` pairs saying
/// which crossing the edge flows into; it is only needed for components that
/// never pass under a crossing, which the PD tuples alone cannot orient.
pub fn parse_pd_with_orientation(
    text: &str,
    orientation: &[(EdgeLabel, usize)],
) -> Result<Diagram, DiagramError> {
    let (tuples, circles) = tokenize(text)?;
    diagram_from_tuples(&tuples, circles, orientation)
}

/// Infers crossing signs from bare PD tuples and builds the diagram.
pub fn diagram_from_tuples(
    tuples: &[[EdgeLabel; 4]],
    circles: usize,
    orientation: &[(EdgeLabel, usize)],
) -> Result<Diagram, DiagramError> {
    let mut occ: BTreeMap<EdgeLabel, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, t) in tuples.iter().enumerate() {
        for (s, &l) in t.iter().enumerate() {
            if l == 0 {
                return Err(DiagramError::ZeroLabel);
            }
            occ.entry(l).or_default().push((x, s));
        }
    }
    if let Some((&label, v)) = occ.iter().find(|(_, v)| v.len() != 2) {
        return Err(DiagramError::EdgeMultiplicity { label, count: v.len() });
    }
    for &(l, x) in orientation {
        match occ.get(&l) {
            None => return Err(DiagramError::UnknownEdge(l)),
            Some(v) if v.iter().all(|o| o.0 != x) => {
                return Err(DiagramError::Inconsistent(format!("edge {l} does not meet crossing {x}")))
            }
            _ => {}
        }
    }
    let other = |l: EdgeLabel, here: (usize, usize)| {
        let v = &occ[&l];
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    };

    let mut visited = vec![[false; 4]; tuples.len()];
    let mut signs: Vec<Option<Sign>> = vec![None; tuples.len()];
    for (&start_label, v) in occ.iter() {
        let start = v[0];
        if visited[start.0][start.1] {
            continue;
        }
        // Walk the component: enter crossing x at slot s, leave through s+2.
        let mut passes: Vec<(usize, usize)> = Vec::new();
        let mut walk_edges: Vec<EdgeLabel> = vec![start_label];
        let mut at = start;
        loop {
            let (x, s) = at;
            let exit = (s + 2) % 4;
            visited[x][s] = true;
            visited[x][exit] = true;
            passes.push((x, s));
            let e = tuples[x][exit];
            at = other(e, (x, exit));
            if at == start {
                break;
            }
            walk_edges.push(e);
        }

        let mut forward: Option<bool> = None;
        for &(x, s) in &passes {
            if s % 2 == 0 {
                let dir = s == 0;
                match forward {
                    None => forward = Some(dir),
                    Some(f) if f != dir => {
                        return Err(DiagramError::Inconsistent(format!(
                            "component through edge {start_label} passes under crossing {x} against its orientation"
                        )))
                    }
                    _ => {}
                }
            }
        }
        for &(l, hx) in orientation {
            // The walk enters each pass through the edge carried before it.
            let n = walk_edges.len();
            let Some(i) = (0..n).find(|&i| walk_edges[i] == l) else { continue };
            let dir = passes[i].0 == hx;
            match forward {
                Some(f) if f != dir => {
                    return Err(DiagramError::Inconsistent(format!(
                        "orientation override for edge {l} contradicts the under-strand direction"
                    )))
                }
                _ => forward = Some(dir),
            }
        }
        let forward = forward.unwrap_or_else(|| label_order_direction(&walk_edges));
        for &(x, s) in &passes {
            if s % 2 == 1 {
                // Over-strand entering through slot 3 runs l -> j: positive.
                let enters = if forward { s } else { (s + 2) % 4 };
                signs[x] = Some(if enters == 3 { Sign::Positive } else { Sign::Negative });
            }
        }
    }
    let crossings = tuples
        .iter()
        .zip(signs)
        .map(|(t, s)| Crossing::new(*t, s.expect("every crossing has an over-pass")))
        .collect();
    Diagram::from_crossings(crossings, circles)
}

/// Direction in which consecutive labels mostly increase.
fn label_order_direction(walk: &[EdgeLabel]) -> bool {
    let n = walk.len();
    let mut up = 0usize;
    let mut down = 0usize;
    for i in 0..n {
        let (a, b) = (walk[i], walk[(i + 1) % n]);
        if b == a.wrapping_add(1) {
            up += 1;
        } else if a == b.wrapping_add(1) {
            down += 1;
        }
    }
    up >= down
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn err(&self, msg: &str) -> DiagramError {
        DiagramError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_whitespace() || self.bytes[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a non-negative integer"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DiagramError::Syntax { pos: start, msg: "integer out of range".to_string() })
    }
}

fn tokenize(text: &str) -> Result<(Vec<[EdgeLabel; 4]>, usize), DiagramError> {
    let mut lx = Lexer { bytes: text.as_bytes(), pos: 0 };
    lx.skip_ws();
    let wrapped = lx.bytes[lx.pos..].starts_with(b"PD[");
    if wrapped {
        lx.pos += 3;
    }
    let mut tuples = Vec::new();
    let mut circles = 0usize;
    let mut tokens = 0usize;
    loop {
        lx.skip_separators();
        match lx.peek() {
            None => break,
            Some(b']') if wrapped => {
                lx.pos += 1;
                lx.skip_separators();
                if lx.peek().is_some() {
                    return Err(lx.err("trailing input after PD[...]"));
                }
                return finish(tuples, circles, tokens, &lx);
            }
            Some(b'X') => {
                lx.pos += 1;
                lx.expect(b'[')?;
                let mut t = [0u32; 4];
                for (k, slot) in t.iter_mut().enumerate() {
                    if k > 0 {
                        lx.expect(b',')?;
                    }
                    *slot = lx.number()?;
                }
                lx.expect(b']')?;
                tuples.push(t);
            }
            Some(b'U') => {
                lx.pos += 1;
                circles += lx.number()? as usize;
            }
            Some(_) => return Err(lx.err("expected X[...] or U<n>")),
        }
        tokens += 1;
    }
    if wrapped {
        return Err(lx.err("unterminated PD["));
    }
    finish(tuples, circles, tokens, &lx)
}

fn finish(
    tuples: Vec<[EdgeLabel; 4]>,
    circles: usize,
    tokens: usize,
    lx: &Lexer<'_>,
) -> Result<(Vec<[EdgeLabel; 4]>, usize), DiagramError> {
    if tokens == 0 {
        return Err(lx.err("empty diagram description"));
    }
    Ok((tuples, circles))
}
