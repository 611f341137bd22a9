mod common;

use dcat::dsl::{parse_document, print_document};
use dcat::dblcat::Span;
use dcat::universal::check_iso_strong;

#[test]
fn counterexample_is_pinned() {
    let text = print_document(&common::counterexample_document());
    common::golden("counterexample.dcat.json", &text).unwrap();
    let doc = parse_document(&text).unwrap();
    let v = check_iso_strong(&Span, &doc.family_proarrow("m").unwrap(), &doc.family_proarrow("n").unwrap()).unwrap();
    assert_eq!(v.composite.cell.src().apex().len(), 2);
    assert_eq!(v.composite.cell.dst().apex().len(), 4);
    assert!(!v.composite_iso());
}

#[test]
fn boolean_model_is_pinned() {
    let text = print_document(&common::boolean_model_document());
    common::golden("boolean-model.dcat.json", &text).unwrap();
    assert_eq!(parse_document(&text).unwrap().model("boolean").unwrap(), dcat::theory::boolean_model());
}

#[test]
fn failure_report_is_pinned() {
    let text = print_document(&common::failure_report_document());
    common::golden("failure-report.dcat.json", &text).unwrap();
    assert!(!parse_document(&text).unwrap().report("report").unwrap().passed());
}
