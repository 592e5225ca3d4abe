//! Knot tables: named PD codes read from CSV or JSON, and the bundled set.

use std::collections::BTreeSet;
use std::path::Path;

use khbound_core::{parse_pd, Diagram};
use serde::Deserialize;

use crate::error::CliError;
use crate::formats::PdJson;

const BUNDLED: &str = include_str!("../data/knots.csv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: String,
    pub diagram: Diagram,
}

impl KnotTableEntry {
    pub fn new(name: &str, pd: &str) -> Result<Self, CliError> {
        let diagram = parse_pd(pd)
            .map_err(|source| CliError::Diagram { context: format!("entry {name:?}"), source })?
            .with_name(name);
        Ok(KnotTableEntry { name: name.into(), pd: pd.into(), diagram })
    }

    fn from_diagram(name: &str, d: Diagram) -> Self {
        KnotTableEntry { name: name.into(), pd: d.to_pd_string(), diagram: d.with_name(name) }
    }
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    name: String,
    pd: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum JsonPd {
    Text(String),
    Structured(PdJson),
}

#[derive(Debug, Deserialize)]
struct JsonRow {
    name: String,
    pd: JsonPd,
}

/// Parses a `name,pd` CSV table.
pub fn parse_table_csv(text: &str) -> Result<Vec<KnotTableEntry>, CliError> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (k, row) in rd.deserialize::<CsvRow>().enumerate() {
        let row = row.map_err(|e| CliError::Parse { context: format!("CSV row {}", k + 2), msg: e.to_string() })?;
        out.push(KnotTableEntry::new(&row.name, &row.pd)?);
    }
    check_unique(&out)?;
    Ok(out)
}

/// Parses a JSON array of `{"name": ..., "pd": <text or PD JSON>}`.
pub fn parse_table_json(text: &str) -> Result<Vec<KnotTableEntry>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let rows: Vec<JsonRow> =
        serde_json::from_str(text).map_err(|e| CliError::Parse { context: "knot table JSON".into(), msg: e.to_string() })?;
    let mut out = Vec::new();
    for row in rows {
        match row.pd {
            JsonPd::Text(pd) => out.push(KnotTableEntry::new(&row.name, &pd)?),
            JsonPd::Structured(pd) => {
                let d = pd
                    .to_diagram()
                    .map_err(|e| CliError::Parse { context: format!("entry {:?}", row.name), msg: e.to_string() })?;
                out.push(KnotTableEntry::from_diagram(&row.name, d));
            }
        }
    }
    check_unique(&out)?;
    Ok(out)
}

fn check_unique(entries: &[KnotTableEntry]) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for e in entries {
        if !seen.insert(e.name.as_str()) {
            return Err(CliError::Duplicate(e.name.clone()));
        }
    }
    Ok(())
}

/// Reads a table file; `.json` files are JSON, anything else CSV.
pub fn ingest_table(path: &Path) -> Result<Vec<KnotTableEntry>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_table_json(&text)
    } else if text.trim().is_empty() {
        Ok(Vec::new())
    } else {
        parse_table_csv(&text)
    }
}

/// Adds `m<name>` mirrors of every entry with crossings.
pub fn with_mirrors(entries: Vec<KnotTableEntry>) -> Result<Vec<KnotTableEntry>, CliError> {
    let mut out = entries.clone();
    for e in &entries {
        if e.diagram.n_crossings() > 0 {
            let name = format!("m{}", e.name);
            out.push(KnotTableEntry::from_diagram(&name, e.diagram.mirror()));
        }
    }
    check_unique(&out)?;
    Ok(out)
}

/// The bundled table with mirrors.
pub fn bundled_table() -> Vec<KnotTableEntry> {
    with_mirrors(parse_table_csv(BUNDLED).expect("bundled table parses")).expect("bundled names are unique")
}

pub fn find<'a>(table: &'a [KnotTableEntry], name: &str) -> Option<&'a KnotTableEntry> {
    table.iter().find(|e| e.name == name)
}
