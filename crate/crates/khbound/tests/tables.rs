use khbound::fixtures::{bundled_table, find, ingest_table, parse_table_json, with_mirrors};
use khbound::formats::PdJson;
use khbound::CliError;
use khbound_core::parse_pd;

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn csv_with_mirrors_doubles() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "t.csv",
        "name,pd\n\
         trefoil,\"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\"\n\
         hopf,\"X[3,2,4,1] X[2,3,1,4]\"\n\
         fig8,\"PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]\"\n",
    );
    let entries = ingest_table(&p).unwrap();
    assert_eq!(entries.len(), 3);
    let all = with_mirrors(entries).unwrap();
    assert_eq!(all.len(), 6);
    let m = find(&all, "mtrefoil").unwrap();
    assert_eq!(m.diagram.stats().c_minus, 3);
    assert_eq!(m.diagram, find(&all, "trefoil").unwrap().diagram.mirror().with_name("mtrefoil"));
}

#[test]
fn empty_files_give_empty_tables() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ingest_table(&write(&dir, "e.csv", "")).unwrap().is_empty());
    assert!(ingest_table(&write(&dir, "h.csv", "name,pd\n")).unwrap().is_empty());
    assert!(ingest_table(&write(&dir, "e.json", "[]")).unwrap().is_empty());
}

#[test]
fn bad_tables_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(&dir, "d.csv", "name,pd\nk,U1\nk,\"X[1,1,2,2]\"\n");
    assert!(matches!(ingest_table(&dup), Err(CliError::Duplicate(n)) if n == "k"));
    let clash = write(&dir, "c.csv", "name,pd\nk,\"X[1,1,2,2]\"\nmk,U1\n");
    assert!(matches!(with_mirrors(ingest_table(&clash).unwrap()), Err(CliError::Duplicate(_))));
    let bad = write(&dir, "b.csv", "name,pd\nk,\"X[1,2,3,4]\"\n");
    assert!(matches!(ingest_table(&bad), Err(CliError::Diagram { .. })));
    assert!(ingest_table(&dir.path().join("missing.csv")).is_err());
    assert!(parse_table_json("{").is_err());
}

#[test]
fn json_entries_take_text_or_structured_pd() {
    let hopf = parse_pd("X[3,2,4,1] X[2,3,1,4]").unwrap();
    let structured = serde_json::to_string(&PdJson::from_diagram(&hopf)).unwrap();
    let text = format!(r#"[{{"name": "a", "pd": "X[1,1,2,2]"}}, {{"name": "b", "pd": {structured}}}]"#);
    let t = parse_table_json(&text).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t[1].diagram.stats(), hopf.stats());
}

#[test]
fn bundled_table_covers_the_reference_instances() {
    let t = bundled_table();
    let names = [
        "unknot", "hopf", "mhopf", "3_1", "m3_1", "4_1", "m4_1", "T3_3", "T4_4", "8_21", "m8_21", "9_45", "m9_45",
        "9_46", "m9_46",
    ];
    for n in names {
        assert!(find(&t, n).is_some(), "{n}");
    }
    for q in 3..=8 {
        let d = &find(&t, &format!("T2_{q}")).unwrap().diagram;
        assert_eq!((d.n_crossings(), d.stats().c_plus), (q, q));
        assert_eq!(find(&t, &format!("mT2_{q}")).unwrap().diagram.stats().c_minus, q);
    }
    for e in &t {
        let s = e.diagram.stats();
        assert_eq!(e.diagram.writhe(), s.c_plus as i64 - s.c_minus as i64);
    }
}
