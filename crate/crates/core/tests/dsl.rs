use dcat::dsl::*;
use dcat::finset::{FinFunction, FinSet, SetSpan};
use dcat::theory::{boolean_model, builtin_lc_mon_theory};

const EMPTY: &str = "{\n  \"version\": \"1\",\n  \"entries\": {}\n}\n";

#[test]
fn empty_document() {
    let d = parse_document(r#"{"version":"1","entries":{}}"#).unwrap();
    assert!(d.entries.is_empty());
    assert_eq!(print_document(&d), EMPTY);
    assert_eq!(print_document(&Document::new()), EMPTY);
}

#[test]
fn finset_entry() {
    let d = parse_document(r#"{"version":"1","entries":{"A":{"kind":"finset","elements":["a","b"]}}}"#).unwrap();
    assert_eq!(d.finset("A").unwrap().len(), 2);
}

#[test]
fn missing_leg_is_a_reference_error() {
    let text = r#"{"version":"1","entries":{
        "f":{"kind":"function","dom":["s"],"cod":["x"],"map":["x"]},
        "S":{"kind":"span","left":"f","right":"g"}}}"#;
    match parse_document(text) {
        Err(DslError::Reference { entry, name, expected }) => {
            assert_eq!((entry.as_str(), name.as_str(), expected.as_str()), ("S", "g", "function"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_kind_is_a_reference_error() {
    let text = r#"{"version":"1","entries":{"A":{"kind":"finset","elements":[]},"S":{"kind":"span","left":"A","right":"A"}}}"#;
    assert!(matches!(parse_document(text), Err(DslError::Reference { name, .. }) if name == "A"));
}

#[test]
fn key_order_does_not_matter() {
    let a = r#"{"version":"1","entries":{"f":{"kind":"function","dom":["s","t"],"cod":["x"],"map":["x","x"]}}}"#;
    let b = r#"{"entries":{"f":{"map":["x","x"],"cod":["x"],"kind":"function","dom":["s","t"]}},"version":"1"}"#;
    let (a, b) = (parse_document(a).unwrap(), parse_document(b).unwrap());
    assert_eq!(a, b);
    assert_eq!(print_document(&a), print_document(&b));
}

#[test]
fn canonical_text_is_a_fixpoint() {
    let s = SetSpan::new(
        FinFunction::new(FinSet::range(2), FinSet::new(["p", "q"]).unwrap(), vec![0, 1]).unwrap(),
        FinFunction::new(FinSet::range(2), FinSet::singleton("*"), vec![0, 0]).unwrap(),
    )
    .unwrap();
    let model = boolean_model();
    let doc = Document::new()
        .with("s", Entry::span(&s))
        .with("lc-mon", Entry::theory(&builtin_lc_mon_theory()))
        .with("bool", Entry::model_of(&model, "lc-mon"));
    let text = print_document(&doc);
    let back = parse_document(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(print_document(&back), text);
    assert_eq!(back.span("s").unwrap(), s);
    assert_eq!(back.model("bool").unwrap(), model);
}

fn syntax_error(text: &str) -> (usize, usize, Vec<String>) {
    match parse_document(text) {
        Err(DslError::Syntax { line, column, expected, .. }) => (line, column, expected),
        other => panic!("{text:?}: {other:?}"),
    }
}

#[test]
fn syntax_diagnostics_have_positions() {
    assert_eq!(syntax_error("{\"version\": \"1\",\n  \"entries\": {]}"), (2, 15, vec!["string".to_string()]));
    assert_eq!(syntax_error("").0, 1);
    assert_eq!(syntax_error("{\"a\": 1.5}"), (1, 8, vec!["`,`".into(), "`]`".into(), "`}`".into()]));
    assert_eq!(syntax_error("{\"a\": 1, \"a\": 2}").1, 10);
    assert_eq!(syntax_error("{} x").2, vec!["end of input".to_string()]);
    assert_eq!(syntax_error("[-1]").1, 2);
}

#[test]
fn schema_errors_name_entry_and_field() {
    let text = r#"{"version":"1","entries":{"f":{"kind":"function","dom":["s"],"cod":["x"],"map":["y"]}}}"#;
    match parse_document(text) {
        Err(DslError::Schema { entry, field, .. }) => assert_eq!((entry.as_str(), field.as_str()), ("f", "map[0]")),
        other => panic!("{other:?}"),
    }
    let text = r#"{"version":"1","entries":{"f":{"kind":"function","dom":["s"],"cod":["x"],"map":["x"],"extra":1}}}"#;
    assert!(matches!(parse_document(text), Err(DslError::Schema { entry, .. }) if entry == "f"));
    let text = r#"{"version":"2","entries":{}}"#;
    assert!(matches!(parse_document(text), Err(DslError::Schema { field, .. }) if field == "version"));
    let text = r#"{"version":"1","entries":{"r":{"kind":"report","verdict":"pass","cases":1,"failures":[{"check":"x","instance":"y"}]}}}"#;
    assert!(matches!(parse_document(text), Err(DslError::Schema { field, .. }) if field == "verdict"));
}

#[test]
fn strings_round_trip_escapes() {
    let labels = ["\"", "\\", "\n", "tab\t", "\u{1}", "é", "𝟙"];
    let doc = Document::new().with("A", Entry::finset(&FinSet::new(labels).unwrap()));
    let text = print_document(&doc);
    assert_eq!(parse_document(&text).unwrap(), doc);
    let escaped = r#"{"version":"1","entries":{"A":{"kind":"finset","elements":["𝟙","é","\/"]}}}"#;
    let d = parse_document(escaped).unwrap();
    assert_eq!(d.finset("A").unwrap(), FinSet::new(["𝟙", "é", "/"]).unwrap());
}

mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_documents_round_trip(seed in any::<u64>()) {
        let doc = common::random_document(seed);
        doc.validate().unwrap();
        let text = print_document(&doc);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &common::normalized(&doc));
        prop_assert_eq!(print_document(&back), text);
    }

    #[test]
    fn malformed_input_gives_one_diagnostic(seed in any::<u64>(), cut in 0usize..4000, junk in "[\\[\\]{}:,\"a-z0-9 \\\\]{0,3}") {
        let text = print_document(&common::random_document(seed));
        let cut = (0..=cut.min(text.len())).rev().find(|&k| text.is_char_boundary(k)).unwrap();
        let broken = format!("{}{}", &text[..cut], junk);
        if let Err(e) = parse_document(&broken) {
            prop_assert!(!e.to_string().is_empty());
        }
    }
}
