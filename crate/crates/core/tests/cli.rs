//! End-to-end runs of the `accat` binary.

use std::path::Path;
use std::process::{Command, Output};

const ARROW: &str = r#"{"objects":["a","b"],"morphisms":[{"name":"f","src":"a","tgt":"b"}],"compose":[]}"#;
const ISO: &str = r#"{"objects":["a","b"],
    "morphisms":[{"name":"f","src":"a","tgt":"b"},{"name":"g","src":"b","tgt":"a"}],
    "compose":[{"first":"f","second":"g","result":"id:a"},{"first":"g","second":"f","result":"id:b"}]}"#;
const POINT: &str = r#"{"objects":["*"],"morphisms":[],"compose":[]}"#;

fn accat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_accat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn reflect_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let iso = write(dir.path(), "iso.json", ISO);
    let report = dir.path().join("out.json");
    let o = accat(&["reflect", &iso, "--json-out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("objects: 2 -> 1"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["quotient"]["objects"].as_array().unwrap().len(), 1);
}

#[test]
fn pushout_of_files_with_relative_references() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "pt.json", POINT);
    write(dir.path(), "arrow.json", ARROW);
    let i = write(
        dir.path(),
        "i.json",
        r#"{"source":"pt.json","target":"arrow.json","object_map":{"*":"a"},"morphism_map":{}}"#,
    );
    let f = write(
        dir.path(),
        "f.json",
        r#"{"source":"pt.json","target":"arrow.json","object_map":{"*":"b"},"morphism_map":{}}"#,
    );
    let o = accat(&["pushout", &i, &f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("acyclic: true"));
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(accat(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(accat(&["suite", "no-such-suite"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.json", r#"{"objects":["a"],"morphisms":[{"name":"f","src":"a","tgt":"z"}],"compose":[]}"#);
    assert_eq!(accat(&["check", &bad]).status.code(), Some(2));
    assert_eq!(accat(&["check", &dir.path().join("missing.json").to_string_lossy()]).status.code(), Some(2));

    write(dir.path(), "pt.json", POINT);
    write(dir.path(), "arrow.json", ARROW);
    let g = write(
        dir.path(),
        "g.json",
        r#"{"source":"pt.json","target":"arrow.json","object_map":{"*":"a"},"morphism_map":{}}"#,
    );
    assert_eq!(accat(&["rlp", &g, "--against", "J", "--max-dim", "1"]).status.code(), Some(1));
    let o = accat(&["factorize", &g, "--against", "J", "--max-dim", "1", "--max-stages", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("stopped after"));
}

#[test]
fn infinite_quotient_hits_the_cap() {
    let dir = tempfile::tempdir().unwrap();
    let arrow = write(dir.path(), "arrow.json", ARROW);
    let rel = write(dir.path(), "rel.json", r#"{"object_pairs":[["a","b"]],"sequence_pairs":[]}"#);
    let o = accat(&["quotient", &arrow, &rel, "--cap", "50"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn homology_via_nerve_and_subdivision() {
    let dir = tempfile::tempdir().unwrap();
    let circle = write(dir.path(), "circle.json", r#"{"vertices":["a","b","c"],"simplices":[["a","b"],["b","c"],["a","c"]]}"#);
    let o = accat(&["homology", &circle]);
    assert_eq!(stdout(&o), "H_0 = Z\nH_1 = Z\n");
    let o = accat(&["sd", &circle, "--times", "2"]);
    assert!(stdout(&o).starts_with("f-vector: [12, 12]"));
    let arrow = write(dir.path(), "arrow.json", ARROW);
    assert_eq!(stdout(&accat(&["homology", &arrow, "--via-nerve"])), "H_0 = Z\n");
}

#[test]
fn suite_reports_are_reproducible() {
    let a = accat(&["suite", "pushsieve-acyclic", "--count", "10", "--seed", "3"]);
    let b = accat(&["suite", "pushsieve-acyclic", "--count", "10", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("suite pushsieve-acyclic: 10/10 passed, 0 failed, 0 capped\n"));
}

#[test]
fn generators_list_their_posets() {
    let o = accat(&["generators", "--set", "J", "--dim", "2", "--horn", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("codomain: 25 elements"));
    assert_eq!(accat(&["generators", "--set", "J", "--dim", "0"]).status.code(), Some(2));
}
