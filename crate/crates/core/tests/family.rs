use std::time::Instant;

use dcat::family::terminal_dictionary::verify;

#[test]
fn terminal_families_are_spans() {
    let start = Instant::now();
    let r = verify(1, usize::MAX).unwrap();
    eprintln!("{r:?} in {:?}", start.elapsed());
    assert!(r.passed(), "{:?}", r.failures);
    // Sets {0, 1}: functions 0->0, 0->1, 1->1; spans with apex <= 1 up to
    // iso: 1 + 1 + 1 + 2.
    assert_eq!((r.objects, r.arrows, r.proarrows), (2, 3, 5));
}

#[test]
fn dictionary_check_respects_budget() {
    let r = verify(2, 500).unwrap();
    assert!(r.partial && r.passed());
    assert!(r.cells < 3855);
}
