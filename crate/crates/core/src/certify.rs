//! Certified lower bounds on the minimal number of positive (negative)
//! crossings, read off extreme Khovanov degrees.
//!
//! A link with `KH^i != 0` for some `i > 0` needs at least `i` positive
//! crossings in every diagram. For a knot `K` and its `(p, pt)`-cable with
//! `t <= 2 c+(K)`, `i_max(K(p, pt)) / p^2 <= c+(K)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::Diagram;
use crate::error::{CertifyError, ComputeError, DiagramError};
use crate::factory::{cable_diagram, torus_diagram, CableSpec};
use crate::invariants::{kh_table, Backend, ComputeConfig, KhTable};

pub const ENGINE: &str = concat!("khbound-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    /// `c+ >= i_max` and `c- >= -i_min` of the link itself.
    DiagramBound,
    /// `c+(K) >= ceil(i_max(K(p, pt)) / p^2)`.
    CableBound,
}

impl Statement {
    pub fn as_str(self) -> &'static str {
        match self {
            Statement::DiagramBound => "diagram-bound",
            Statement::CableBound => "cable-bound",
        }
    }

    pub fn parse(s: &str) -> Option<Statement> {
        match s {
            "diagram-bound" => Some(Statement::DiagramBound),
            "cable-bound" => Some(Statement::CableBound),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    NotNegative,
    NotPositive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotNegative => "not-negative",
            Verdict::NotPositive => "not-positive",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s {
            "not-negative" => Some(Verdict::NotNegative),
            "not-positive" => Some(Verdict::NotPositive),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subject {
    pub name: Option<String>,
    pub diagram_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: Subject,
    pub statement: Statement,
    /// Cable parameters, for cable bounds.
    pub p: Option<usize>,
    pub t: Option<i64>,
    pub i_max: i64,
    pub i_min: i64,
    /// Certified `c+ >=` bound.
    pub bound: i64,
    /// Certified `c- >=` bound (diagram bounds only).
    pub negative_bound: Option<i64>,
    pub verdicts: Vec<Verdict>,
    /// Hash of the table the bound was read from.
    pub table_ref: String,
    pub backend: Backend,
    pub engine: String,
}

impl Certificate {
    /// One-line human-readable summary.
    pub fn summary(&self) -> String {
        let name = self.subject.name.as_deref().unwrap_or("diagram");
        let mut s = match (self.statement, self.p, self.t) {
            (Statement::CableBound, Some(p), Some(t)) => {
                alloc::format!("{name}: i_max of the ({p},{t}) cable is {}, so c+ >= {}", self.i_max, self.bound)
            }
            _ => alloc::format!(
                "{name}: i_max = {}, i_min = {}, so c+ >= {} and c- >= {}",
                self.i_max,
                self.i_min,
                self.bound,
                self.negative_bound.unwrap_or(0)
            ),
        };
        if self.verdicts.is_empty() {
            s.push_str("; no verdict");
        }
        for v in &self.verdicts {
            s.push_str("; ");
            s.push_str(v.as_str());
        }
        s
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Bounds on `c+` and `c-` from the link's own table.
pub fn diagram_bound(t: &KhTable) -> Result<Certificate, ComputeError> {
    let (i_min, i_max) = t.extreme_degrees()?;
    let mut verdicts = Vec::new();
    if i_max > 0 {
        verdicts.push(Verdict::NotNegative);
    }
    if i_min < 0 {
        verdicts.push(Verdict::NotPositive);
    }
    Ok(Certificate {
        subject: Subject { name: t.source.name.clone(), diagram_hash: t.source.diagram_hash.clone() },
        statement: Statement::DiagramBound,
        p: None,
        t: None,
        i_max,
        i_min,
        bound: i_max,
        negative_bound: Some(-i_min),
        verdicts,
        table_ref: t.table_hash(),
        backend: t.source.backend,
        engine: String::from(ENGINE),
    })
}

/// Cable bound from a table already computed for the `(p, pt)` cable.
/// `subject` names the companion knot.
pub fn cable_bound_from_table(subject: Subject, p: usize, t: i64, cable: &KhTable) -> Result<Certificate, ComputeError> {
    let (i_min, i_max) = cable.extreme_degrees()?;
    let bound = ceil_div(i_max, (p * p) as i64).max(0);
    let verdicts = if i_max > 0 { alloc::vec![Verdict::NotNegative] } else { Vec::new() };
    Ok(Certificate {
        subject,
        statement: Statement::CableBound,
        p: Some(p),
        t: Some(t),
        i_max,
        i_min,
        bound,
        negative_bound: None,
        verdicts,
        table_ref: cable.table_hash(),
        backend: cable.source.backend,
        engine: String::from(ENGINE),
    })
}

/// A certified lower bound on `c+(K)` from the knot's own table.
pub fn certified_lower_bound(d: &Diagram, config: &ComputeConfig) -> Result<i64, ComputeError> {
    Ok(kh_table(d, Backend::Auto, config)?.i_max()?.max(0))
}

/// Builds the `(p, pt)` cable of the knot `d` and certifies
/// `c+(K) >= ceil(i_max / p^2)`.
///
/// `t <= 0` is always admissible. For `t > 0` the hypothesis `t <= 2 c+(K)`
/// is established from the certified bound `c+(K) >= i_max(K)`; if that is
/// too weak the call fails rather than emit an unjustified bound.
pub fn cable_certificate(
    d: &Diagram,
    p: usize,
    t: i64,
    backend: Backend,
    config: &ComputeConfig,
) -> Result<Certificate, CertifyError> {
    if d.n_components() != 1 {
        return Err(DiagramError::NotAKnot(d.n_components()).into());
    }
    if p < 2 {
        return Err(DiagramError::InvalidParameter(alloc::format!("cable needs p >= 2, got {p}")).into());
    }
    if t > 0 {
        let lower = certified_lower_bound(d, config)?;
        if t > 2 * lower {
            return Err(CertifyError::Hypothesis { t, lower });
        }
    }
    let cable = cable_diagram(d, CableSpec::new(p, t)?)?;
    let table = kh_table(&cable, backend, config)?;
    let subject = Subject { name: d.name().map(String::from), diagram_hash: crate::invariants::diagram_hash(d) };
    Ok(cable_bound_from_table(subject, p, t, &table)?)
}

/// Re-derives a certificate from its table; true iff identical.
pub fn revalidate(cert: &Certificate, table: &KhTable) -> bool {
    let again = match cert.statement {
        Statement::DiagramBound => diagram_bound(table),
        Statement::CableBound => match (cert.p, cert.t) {
            (Some(p), Some(t)) => cable_bound_from_table(cert.subject.clone(), p, t, table),
            _ => return false,
        },
    };
    matches!(again, Ok(c) if c == *cert)
}

/// Which vanishing condition applies to a `(p, pt)` cable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `t <= 2c`: homology vanishes above `p^2 c`.
    Untwisted,
    /// `p = 2k`, `t > 2c`: vanishes above `2k^2 (t - 2c) + p^2 c`.
    EvenTwisted,
    /// `p = 2k + 1`, `k > 0`, `t > 2c`: vanishes above `2k(k+1)(t - 2c) + p^2 c`.
    OddTwisted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub regime: Regime,
    /// Largest degree allowed to carry homology.
    pub limit: i64,
    pub i_max: i64,
    pub pass: bool,
}

/// Checks the cable table against the vanishing region for a companion with
/// `c+(K) <= c_plus_witness`. A larger witness only weakens the region, so a
/// failure means an engine error or a counterexample.
pub fn vanishing_check(table: &KhTable, p: usize, t: i64, c_plus_witness: usize) -> Result<VanishingReport, ComputeError> {
    if p < 2 {
        return Err(DiagramError::InvalidParameter(alloc::format!("cable needs p >= 2, got {p}")).into());
    }
    let c = c_plus_witness as i64;
    let p2 = (p * p) as i64;
    let k = (p / 2) as i64;
    let (regime, limit) = if t <= 2 * c {
        (Regime::Untwisted, p2 * c)
    } else if p.is_multiple_of(2) {
        (Regime::EvenTwisted, 2 * k * k * (t - 2 * c) + p2 * c)
    } else {
        (Regime::OddTwisted, 2 * k * (k + 1) * (t - 2 * c) + p2 * c)
    };
    let i_max = table.i_max()?;
    Ok(VanishingReport { regime, limit, i_max, pass: i_max <= limit })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapReport {
    /// `c+` of the torus link `T(2k, 2kt)`, from the closed form `2kt(2k-1)`.
    pub c_plus: i64,
    pub i_max: i64,
    pub gap: i64,
}

/// Compares `c+(T(2k, 2kt))` with its computed `i_max`, which must equal
/// `2k^2 t`.
pub fn gap_report(k: usize, t: usize, backend: Backend, config: &ComputeConfig) -> Result<GapReport, ComputeError> {
    if k == 0 || t == 0 {
        return Err(DiagramError::InvalidParameter(String::from("gap report needs k, t >= 1")).into());
    }
    let d = torus_diagram(2 * k, (2 * k * t) as i64)?;
    let i_max = kh_table(&d, backend, config)?.i_max()?;
    let (k, t) = (k as i64, t as i64);
    let c_plus = 2 * k * t * (2 * k - 1);
    if i_max != 2 * k * k * t {
        return Err(ComputeError::Invariant(alloc::format!(
            "i_max(T({}, {})) = {i_max}, expected {}",
            2 * k,
            2 * k * t,
            2 * k * k * t
        )));
    }
    Ok(GapReport { c_plus, i_max, gap: c_plus - i_max })
}

/// One `(p, t)` sample of the search for positive cable degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableSample {
    pub p: usize,
    pub t: i64,
    /// `None` when `t <= 2 c+(K)` could not be certified.
    pub i_max: Option<i64>,
    pub bound: Option<i64>,
}

/// For each `(p, t)` with a certifiable hypothesis, records `i_max` of the
/// `(p, pt)` cable. Records outcomes only; claims nothing about other `(p, t)`.
pub fn explore_cables(
    d: &Diagram,
    ps: &[usize],
    ts: &[i64],
    backend: Backend,
    config: &ComputeConfig,
) -> Result<Vec<CableSample>, CertifyError> {
    let lower = certified_lower_bound(d, config)?;
    let mut out = Vec::new();
    for &p in ps {
        for &t in ts {
            if t > 0 && t > 2 * lower {
                out.push(CableSample { p, t, i_max: None, bound: None });
                continue;
            }
            let c = cable_certificate(d, p, t, backend, config)?;
            out.push(CableSample { p, t, i_max: Some(c.i_max), bound: Some(c.bound) });
        }
    }
    Ok(out)
}

/// The chain `i_max(K) <= i_max(K(p, 2p i_max(K))) / p^2 <= c+(K)`, with
/// `c+(K)` replaced by the positive crossings of the given diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub p: usize,
    pub i_max_knot: i64,
    pub t: i64,
    pub i_max_cable: i64,
    /// `p^2 i_max(K) <= i_max(cable)`; observed, not guaranteed.
    pub lower_holds: bool,
    /// `i_max(cable) <= p^2 c+(D)`; must hold.
    pub upper_holds: bool,
    pub c_plus_diagram: usize,
}

pub fn check_chain(d: &Diagram, p: usize, backend: Backend, config: &ComputeConfig) -> Result<ChainCheck, CertifyError> {
    let i_max_knot = certified_lower_bound(d, config)?;
    let t = 2 * i_max_knot;
    let c = cable_certificate(d, p, t, backend, config)?;
    let p2 = (p * p) as i64;
    let c_plus_diagram = d.stats().c_plus;
    let upper_holds = c.i_max <= p2 * c_plus_diagram as i64;
    if !upper_holds {
        return Err(ComputeError::Invariant(alloc::format!(
            "cable degree {} exceeds p^2 c+(D) = {}",
            c.i_max,
            p2 * c_plus_diagram as i64
        ))
        .into());
    }
    Ok(ChainCheck {
        p,
        i_max_knot,
        t,
        i_max_cable: c.i_max,
        lower_holds: p2 * i_max_knot <= c.i_max,
        upper_holds,
        c_plus_diagram,
    })
}
