//! Khovanov tables and the invariants read off them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::{self, Write};

use sha2::{Digest, Sha256};

use crate::cube::{build_cube, edge_circles, smoothing_arcs, DEFAULT_NAIVE_LIMIT};
use crate::diagram::{Diagram, Sign};
use crate::error::ComputeError;
use crate::poly::LaurentPoly;
use crate::reduction::{scan, ScanConfig, ScanProgress, DEFAULT_CEILING};

/// Largest diagram accepted by [`jones_via_kauffman`].
pub const JONES_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Naive,
    Scan,
    /// Naive up to the configured crossing limit, scan above it.
    Auto,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Naive => "naive",
            Backend::Scan => "scan",
            Backend::Auto => "auto",
        }
    }

    pub fn parse(s: &str) -> Option<Backend> {
        match s {
            "naive" => Some(Backend::Naive),
            "scan" => Some(Backend::Scan),
            "auto" => Some(Backend::Auto),
            _ => None,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeConfig {
    pub naive_limit: usize,
    pub ceiling: usize,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        ComputeConfig { naive_limit: DEFAULT_NAIVE_LIMIT, ceiling: DEFAULT_CEILING }
    }
}

/// Where a table came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSource {
    pub name: Option<String>,
    pub diagram_hash: String,
    /// Always `Naive` or `Scan`.
    pub backend: Backend,
}

/// Betti numbers of rational Khovanov homology in normalised bidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhTable {
    betti: BTreeMap<(i64, i64), u64>,
    pub source: TableSource,
    pub c_plus: usize,
    pub c_minus: usize,
}

impl KhTable {
    pub fn new(betti: BTreeMap<(i64, i64), u64>, source: TableSource, c_plus: usize, c_minus: usize) -> Self {
        let betti = betti.into_iter().filter(|(_, r)| *r > 0).collect();
        KhTable { betti, source, c_plus, c_minus }
    }

    pub fn betti(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.betti
    }

    pub fn rank(&self, i: i64, j: i64) -> u64 {
        self.betti.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.betti.is_empty()
    }

    /// Total rank in homological degree `i`.
    pub fn rank_in_degree(&self, i: i64) -> u64 {
        self.betti.iter().filter(|((a, _), _)| *a == i).map(|(_, r)| r).sum()
    }

    pub fn extreme_degrees(&self) -> Result<(i64, i64), ComputeError> {
        let lo = self.betti.keys().map(|k| k.0).min().ok_or(ComputeError::EmptyTable)?;
        let hi = self.betti.keys().map(|k| k.0).max().ok_or(ComputeError::EmptyTable)?;
        Ok((lo, hi))
    }

    pub fn i_max(&self) -> Result<i64, ComputeError> {
        self.extreme_degrees().map(|e| e.1)
    }

    pub fn i_min(&self) -> Result<i64, ComputeError> {
        self.extreme_degrees().map(|e| e.0)
    }

    /// `sum (-1)^i rank q^j`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &r) in &self.betti {
            p.add_term(if i % 2 == 0 { r as i64 } else { -(r as i64) }, j);
        }
        p
    }

    /// Betti numbers with `(i, j) -> (f(i), g(j))`.
    pub fn mapped_betti(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> BTreeMap<(i64, i64), u64> {
        self.betti.iter().map(|(&(i, j), &r)| (f(i, j), r)).collect()
    }

    /// One `i j rank` line per entry, sorted.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for (&(i, j), &r) in &self.betti {
            let _ = writeln!(s, "{i} {j} {r}");
        }
        s
    }

    /// SHA-256 of the diagram hash and the canonical table text.
    pub fn table_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.source.diagram_hash.as_bytes());
        h.update(b"\n");
        h.update(self.canonical_text().as_bytes());
        hex(&h.finalize())
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(2 * bytes.len());
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// SHA-256 of the relabelled PD code with crossing signs.
pub fn diagram_hash(d: &Diagram) -> String {
    let r = d.relabelled();
    let mut text = r.to_pd_string();
    text.push('\n');
    for c in r.crossings() {
        text.push(if c.sign == Sign::Positive { '+' } else { '-' });
    }
    hex(&Sha256::digest(text.as_bytes()))
}

/// Betti numbers from the full cube, one rank per quantum block.
pub fn naive_betti(d: &Diagram, limit: usize) -> Result<BTreeMap<(i64, i64), u64>, ComputeError> {
    let cx = build_cube(d, limit)?;
    let n = cx.n_crossings();
    let cm = cx.c_minus as i64;
    let mut betti = BTreeMap::new();
    let mut prev_rank: BTreeMap<i64, usize> = BTreeMap::new();
    for r in 0..=n {
        let blocks = cx.quantum_blocks(r);
        let mut ranks = BTreeMap::new();
        for (&j, m) in &blocks {
            let rank = m.rank();
            let b = m.n_cols() - rank - prev_rank.get(&j).copied().unwrap_or(0);
            if b > 0 {
                betti.insert((r as i64 - cm, j), b as u64);
            }
            ranks.insert(j, rank);
        }
        prev_rank = ranks;
    }
    Ok(betti)
}

pub fn kh_table(d: &Diagram, backend: Backend, config: &ComputeConfig) -> Result<KhTable, ComputeError> {
    kh_table_with_progress(d, backend, config, &mut |_| {})
}

/// As [`kh_table`], reporting scan progress after each crossing.
pub fn kh_table_with_progress(
    d: &Diagram,
    backend: Backend,
    config: &ComputeConfig,
    progress: &mut dyn FnMut(&ScanProgress),
) -> Result<KhTable, ComputeError> {
    let used = match backend {
        Backend::Auto if d.n_crossings() <= config.naive_limit => Backend::Naive,
        Backend::Auto => Backend::Scan,
        b => b,
    };
    let betti = match used {
        Backend::Naive => naive_betti(d, config.naive_limit)?,
        _ => scan(d, &ScanConfig { ceiling: config.ceiling }, progress)?.betti,
    };
    let st = d.stats();
    let source = TableSource { name: d.name().map(String::from), diagram_hash: diagram_hash(d), backend: used };
    let table = KhTable::new(betti, source, st.c_plus, st.c_minus);
    if table.rank_in_degree(0) == 0 {
        return Err(ComputeError::Invariant("no homology in degree 0".into()));
    }
    Ok(table)
}

pub fn extreme_degrees(t: &KhTable) -> Result<(i64, i64), ComputeError> {
    t.extreme_degrees()
}

/// Unnormalised Jones polynomial from the Kauffman bracket state sum.
pub fn jones_via_kauffman(d: &Diagram) -> Result<LaurentPoly, ComputeError> {
    let n = d.n_crossings();
    if n > JONES_LIMIT {
        return Err(ComputeError::CrossingLimit { crossings: n, limit: JONES_LIMIT });
    }
    // counts[(#0 - #1, circles)]
    let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for s in 0u64..(1u64 << n) {
        let (_, k) = edge_circles(d, |x| s >> x & 1 == 1);
        let ones = s.count_ones() as i64;
        *counts.entry((n as i64 - 2 * ones, k + d.circles())).or_insert(0) += 1;
    }
    // Bracket in A, with delta = -A^2 - A^-2.
    let delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
    let mut bracket = LaurentPoly::zero();
    for ((a, k), c) in counts {
        bracket = bracket + delta.pow(k as u32).shift(a).scale(c);
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalised = bracket.shift(-3 * w).scale(sign);
    // A^(2m) -> (-1)^m q^(-m)
    let mut out = LaurentPoly::zero();
    for (e, c) in normalised.terms() {
        if e % 2 != 0 {
            return Err(ComputeError::Invariant("odd power of A in normalised bracket".into()));
        }
        let m = e / 2;
        out.add_term(if m % 2 == 0 { c } else { -c }, -m);
    }
    Ok(out)
}

/// Whether no circle of the all-1 state meets itself at a crossing.
pub fn plus_adequate(d: &Diagram) -> bool {
    state_adequate(d, true)
}

/// Whether no circle of the all-0 state meets itself at a crossing.
pub fn minus_adequate(d: &Diagram) -> bool {
    state_adequate(d, false)
}

fn state_adequate(d: &Diagram, bit: bool) -> bool {
    let (of_edge, _) = edge_circles(d, |_| bit);
    let labels = d.edge_labels();
    let circle = |l| of_edge[labels.binary_search(&l).expect("edge of diagram")];
    let [(a, _), (b, _)] = smoothing_arcs(bit);
    d.crossings().iter().all(|c| circle(c.pd[a]) != circle(c.pd[b]))
}

/// Whether the diagram has no nugatory crossing: no crossing has two
/// opposite corners in the same face.
pub fn is_reduced(d: &Diagram) -> bool {
    let face = d.corner_faces();
    (0..d.n_crossings()).all(|x| face[4 * x] != face[4 * x + 2] && face[4 * x + 1] != face[4 * x + 3])
}

#[cfg(test)]
mod tests;
