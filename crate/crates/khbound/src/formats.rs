//! JSON and CSV forms of diagrams, Khovanov tables and certificates.

use std::collections::BTreeMap;

use khbound_core::certify::{Subject, ENGINE};
use khbound_core::diagram::{diagram_from_tuples, EdgeLabel};
use khbound_core::invariants::TableSource;
use khbound_core::{Backend, Certificate, Diagram, KhTable, Statement, Verdict};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A PD code as JSON: `{"pd": [[a,b,c,d], ...], "circles": n,
/// "orientation": [[edge, crossing], ...], "name": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub pd: Vec<[EdgeLabel; 4]>,
    #[serde(default)]
    pub circles: usize,
    /// `(edge, crossing it flows into)` overrides for components whose
    /// direction is not fixed by an under-pass.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orientation: Vec<(EdgeLabel, usize)>,
}

impl PdJson {
    pub fn from_diagram(d: &Diagram) -> Self {
        PdJson {
            name: d.name().map(String::from),
            pd: d.crossings().iter().map(|c| c.pd).collect(),
            circles: d.circles(),
            orientation: d.orientation_hints(),
        }
    }

    pub fn to_diagram(&self) -> Result<Diagram, CliError> {
        let d = diagram_from_tuples(&self.pd, self.circles, &self.orientation)
            .map_err(|source| CliError::Diagram { context: "PD JSON".into(), source })?;
        Ok(match &self.name {
            Some(n) => d.with_name(n.clone()),
            None => d,
        })
    }
}

pub fn diagram_from_json(text: &str) -> Result<Diagram, CliError> {
    let pd: PdJson = serde_json::from_str(text).map_err(|e| parse_err("PD JSON", e))?;
    pd.to_diagram()
}

fn parse_err(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Parse { context: context.into(), msg: e.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRef {
    #[serde(default)]
    pub name: Option<String>,
    pub hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub diagram: DiagramRef,
    pub backend: String,
    pub c_plus: usize,
    pub c_minus: usize,
    pub betti: Vec<(i64, i64, u64)>,
}

impl TableJson {
    pub fn from_table(t: &KhTable) -> Self {
        TableJson {
            diagram: DiagramRef { name: t.source.name.clone(), hash: t.source.diagram_hash.clone() },
            backend: t.source.backend.as_str().into(),
            c_plus: t.c_plus,
            c_minus: t.c_minus,
            betti: t.betti().iter().map(|(&(i, j), &r)| (i, j, r)).collect(),
        }
    }

    pub fn to_table(&self) -> Result<KhTable, CliError> {
        let backend = Backend::parse(&self.backend)
            .ok_or_else(|| parse_err("table JSON", format!("unknown backend {:?}", self.backend)))?;
        let mut betti = BTreeMap::new();
        for &(i, j, r) in &self.betti {
            if betti.insert((i, j), r).is_some() {
                return Err(parse_err("table JSON", format!("duplicate entry ({i}, {j})")));
            }
        }
        let source = TableSource { name: self.diagram.name.clone(), diagram_hash: self.diagram.hash.clone(), backend };
        Ok(KhTable::new(betti, source, self.c_plus, self.c_minus))
    }
}

pub fn table_to_json(t: &KhTable) -> String {
    to_json_text(&TableJson::from_table(t))
}

pub fn table_from_json(text: &str) -> Result<KhTable, CliError> {
    let t: TableJson = serde_json::from_str(text).map_err(|e| parse_err("table JSON", e))?;
    t.to_table()
}

/// `diagram,backend,i,j,rank` rows with a header.
pub fn table_to_csv(t: &KhTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["diagram", "backend", "i", "j", "rank"]).expect("in-memory write");
    let name = t.source.name.clone().unwrap_or_else(|| t.source.diagram_hash[..16].to_string());
    for (&(i, j), &r) in t.betti() {
        w.write_record([name.clone(), t.source.backend.to_string(), i.to_string(), j.to_string(), r.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub subject: DiagramRef,
    pub statement: String,
    pub p: Option<usize>,
    pub t: Option<i64>,
    pub i_max: i64,
    pub i_min: i64,
    pub bound: i64,
    pub negative_bound: Option<i64>,
    pub verdict: Vec<String>,
    pub table_ref: String,
    pub backend: String,
    pub engine: String,
}

impl CertificateJson {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateJson {
            subject: DiagramRef { name: c.subject.name.clone(), hash: c.subject.diagram_hash.clone() },
            statement: c.statement.as_str().into(),
            p: c.p,
            t: c.t,
            i_max: c.i_max,
            i_min: c.i_min,
            bound: c.bound,
            negative_bound: c.negative_bound,
            verdict: c.verdicts.iter().map(|v| v.as_str().to_string()).collect(),
            table_ref: c.table_ref.clone(),
            backend: c.backend.as_str().into(),
            engine: c.engine.clone(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate, CliError> {
        let err = |m: String| parse_err("certificate JSON", m);
        let statement = Statement::parse(&self.statement).ok_or_else(|| err(format!("unknown statement {:?}", self.statement)))?;
        let backend = Backend::parse(&self.backend).ok_or_else(|| err(format!("unknown backend {:?}", self.backend)))?;
        let verdicts = self
            .verdict
            .iter()
            .map(|v| Verdict::parse(v).ok_or_else(|| err(format!("unknown verdict {v:?}"))))
            .collect::<Result<_, _>>()?;
        Ok(Certificate {
            subject: Subject { name: self.subject.name.clone(), diagram_hash: self.subject.hash.clone() },
            statement,
            p: self.p,
            t: self.t,
            i_max: self.i_max,
            i_min: self.i_min,
            bound: self.bound,
            negative_bound: self.negative_bound,
            verdicts,
            table_ref: self.table_ref.clone(),
            backend,
            engine: self.engine.clone(),
        })
    }
}

pub fn certificate_to_json(c: &Certificate) -> String {
    to_json_text(&CertificateJson::from_certificate(c))
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, CliError> {
    let c: CertificateJson = serde_json::from_str(text).map_err(|e| parse_err("certificate JSON", e))?;
    c.to_certificate()
}

/// Pretty JSON with arrays of scalars kept on one line, keys sorted.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (k, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Engine string written into certificates.
pub fn engine() -> &'static str {
    ENGINE
}
