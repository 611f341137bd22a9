use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)
}

fn dcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn counterexample_fails_iso_strong() {
    let o = dcat(&["check-iso-strong", golden("counterexample.dcat.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("\"instance\": \"Π_{m,n}\""), "{out}");
    assert!(out.contains("source apex 2, target apex 4"), "{out}");
}

#[test]
fn boolean_model_passes() {
    let o = dcat(&["check-model", golden("boolean-model.dcat.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"verdict\": \"pass\""));
}

#[test]
fn product_of_singleton_family_is_its_member() {
    let file = data("singleton-family.dcat.json");
    let o = dcat(&["product", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc = dcat::dsl::parse_document(&stdout(&o)).unwrap();
    let m = doc.family_proarrow("m").unwrap();
    assert_eq!(doc.span("product").unwrap(), m.components[0]);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(dcat(&["check-model"]).status.code(), Some(2));
    assert_eq!(dcat(&["check-model", "/nonexistent/file.dcat.json"]).status.code(), Some(2));
    assert_eq!(dcat(&["check-model", golden("boolean-model.dcat.json").to_str().unwrap(), "--bound", "0"]).status.code(), Some(2));
    let bad = temp("bad.dcat.json");
    std::fs::write(&bad, "{\"version\": \"1\",\n  \"entries\": [}").unwrap();
    let o = dcat(&["roundtrip", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:15"));
    let o = dcat(&["check-model", golden("boolean-model.dcat.json").to_str().unwrap(), "missing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failures_replay_from_the_written_document() {
    let out = temp("iso.dcat.json");
    let o = dcat(&["check-iso-strong", golden("counterexample.dcat.json").to_str().unwrap(), "m", "n", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let first = std::fs::read_to_string(&out).unwrap();
    let again = temp("iso-again.dcat.json");
    let o = dcat(&["check-iso-strong", out.to_str().unwrap(), "m", "n", "--out", again.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(std::fs::read_to_string(&again).unwrap(), first);
}

#[test]
fn sampled_suites_are_deterministic() {
    let a = dcat(&["check-iso-strong", "--seed", "7"]);
    let b = dcat(&["check-iso-strong", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = dcat(&["check-universal", "--seed", "3", "--bound", "2"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, dcat(&["check-universal", "--seed", "3", "--bound", "2"]).stdout);
}

#[test]
fn roundtrip_reprints_canonically() {
    let file = golden("boolean-model.dcat.json");
    let o = dcat(&["roundtrip", file.to_str().unwrap(), "boolean"]);
    assert_eq!(o.status.code(), Some(0));
    let o = dcat(&["roundtrip", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&file).unwrap());
}

#[test]
fn constructions_and_dictionary() {
    let file = data("singleton-family.dcat.json");
    assert_eq!(dcat(&["coproduct", file.to_str().unwrap(), "m"]).status.code(), Some(0));
    let o = dcat(&["diagonal", file.to_str().unwrap(), "Y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(dcat(&["fam-iso-span", "--bound", "1"]).status.code(), Some(0));
    let o = dcat(&["check-universal", file.to_str().unwrap(), "m", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
