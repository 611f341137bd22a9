use std::time::Instant;

use dcat::finset::{FinFunction, SpanMorphism};
use dcat::theory::*;

fn x() -> ObWord {
    ObWord::gen("x")
}

#[test]
fn lc_mon_presentation_counts() {
    let t = builtin_lc_mon_theory();
    assert_eq!(t.objects.len(), 1);
    assert!(t.proarrows.is_empty());
    assert_eq!(t.cells.len(), 2);
    assert_eq!(t.equation_families().len(), 3);
    t.validate().unwrap();
}

#[test]
fn boolean_model_evaluates_products() {
    let m = boolean_model();
    let ev = m.evaluator();
    let id = ProWord::Id(x());
    assert_eq!(ev.pro(&id).unwrap().apex().len(), 2);
    let pair = ProWord::local_product(x(), x(), vec![id.clone(), id.clone()]);
    assert_eq!(ev.pro(&pair).unwrap().apex().len(), 4);
    let top = ProWord::local_product(x(), x(), vec![]);
    assert_eq!(ev.pro(&top).unwrap().apex().len(), 1);
}

#[test]
fn boolean_and_trivial_models_pass() {
    let start = Instant::now();
    let r = check_model(&boolean_model(), 3);
    assert!(r.passed(), "{:?}", r.violations);
    assert!(r.stats.checked > 0);
    let r = check_model(&trivial_model(), 3);
    assert!(r.passed(), "{:?}", r.violations);
    eprintln!("model checks: {:?}", start.elapsed());
}

#[test]
fn mutants_fail_with_expected_axiom() {
    for (axiom, model) in boolean_mutants() {
        let r = check_model(&model, 3);
        assert!(!r.passed(), "{axiom:?} mutant passed");
        assert_eq!(r.violations[0].axiom, axiom, "{:?}", r.violations[0]);
    }
}

#[test]
fn equation_violation_replays() {
    let (_, model) = boolean_mutants().into_iter().find(|(a, _)| *a == Axiom::Equation).unwrap();
    let r = check_model(&model, 3);
    let v = r.violations.iter().find(|v| v.axiom == Axiom::Equation).unwrap();
    let stored = v.cells.clone().unwrap();
    let replayed = replay(&model, v).unwrap().unwrap();
    assert_eq!(stored, replayed);
    assert_ne!(replayed.0, replayed.1);
}

#[test]
fn laxators_at_product_words_match() {
    for model in [boolean_model(), trivial_model()] {
        let (rows, _) = laxators_at_product_words(&model, 2);
        assert!(!rows.is_empty());
        for row in rows {
            let derived = row.derived.unwrap();
            assert_eq!(derived, row.recomputed.unwrap(), "{:?} ⊙ {:?}", row.left, row.right);
        }
    }
}

#[test]
fn cmon_round_trip_one_object() {
    let start = Instant::now();
    let all = enumerate_cmon_categories(1, 3);
    let boolean = CMonCategory::boolean();
    assert!(all.iter().any(|c| c.morphisms.len() == 2 && c.plus == boolean.plus && c.compose == boolean.compose));
    assert_eq!(all.len(), brute_force_rigs(3));
    for c in &all {
        let model = cmon_category_to_model(c).unwrap();
        assert_eq!(&model_to_cmon_category(&model).unwrap(), c);
        let again = cmon_category_to_model(&model_to_cmon_category(&model).unwrap()).unwrap();
        assert_eq!(again, model);
    }
    eprintln!("{} one-object categories in {:?}", all.len(), start.elapsed());
}

#[test]
fn cmon_round_trip_two_objects() {
    let start = Instant::now();
    let all = enumerate_cmon_categories(2, 2);
    assert!(!all.is_empty());
    for c in &all {
        let model = cmon_category_to_model(c).unwrap();
        assert_eq!(&model_to_cmon_category(&model).unwrap(), c);
    }
    eprintln!("{} two-object categories in {:?}", all.len(), start.elapsed());
}

#[test]
fn non_biadditive_composition_is_rejected() {
    let mut c = CMonCategory::boolean();
    c.compose.insert((0, 0), 1);
    match c.validate() {
        Err(CMonError::NotBiadditive { f, g: None, .. }) => assert_eq!(f, "0"),
        other => panic!("{other:?}"),
    }
    assert!(cmon_category_to_model(&c).is_err());
}

/// Counts semirings on `{0, .., n-1}` for each `n <= max` with `0` as zero
/// and, for `n > 1`, `1` as unit, by trying every table.
fn brute_force_rigs(max: usize) -> usize {
    let mut count = 0;
    for n in 1..=max {
        let one = if n > 1 { 1 } else { 0 };
        let free_plus: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        let free_mul: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != 0 && b != 0 && a != one && b != one).collect();
        let tables = |free: &[(usize, usize)], base: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<Vec<usize>>> {
            let mut out = Vec::new();
            for code in 0..n.pow(free.len() as u32) {
                let mut t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| base(a, b)).collect()).collect();
                let mut c = code;
                for &(a, b) in free {
                    t[a][b] = c % n;
                    c /= n;
                }
                out.push(t);
            }
            out
        };
        let plus_base = |a: usize, b: usize| if a == 0 { b } else { a };
        let mul_base = |a: usize, b: usize| if a == 0 || b == 0 { 0 } else if a == one { b } else { a };
        for p in tables(&free_plus, &plus_base) {
            let r = 0..n;
            let comm = r.clone().all(|a| r.clone().all(|b| p[a][b] == p[b][a]));
            let assoc = r.clone().all(|a| r.clone().all(|b| r.clone().all(|c| p[p[a][b]][c] == p[a][p[b][c]])));
            if !(comm && assoc) {
                continue;
            }
            for m in tables(&free_mul, &mul_base) {
                let ok = r.clone().all(|a| {
                    r.clone().all(|b| {
                        r.clone().all(|c| m[m[a][b]][c] == m[a][m[b][c]] && m[a][p[b][c]] == p[m[a][b]][m[a][c]] && m[p[a][b]][c] == p[m[a][c]][m[b][c]])
                    })
                });
                if ok {
                    count += 1;
                }
            }
        }
    }
    count
}

/// The transformation from the Boolean model to the terminal one induced by
/// the unique semiring map.
fn boolean_to_trivial() -> TransformationData {
    let (source, target) = (boolean_model(), trivial_model());
    let id = ProWord::Id(x());
    let (s, t) = (source.evaluator().pro(&id).unwrap(), target.evaluator().pro(&id).unwrap());
    let point = FinFunction::identity(s.left_foot());
    let apex = FinFunction::from_fn(s.apex().clone(), t.apex().clone(), |_| 0);
    let cell = SpanMorphism::new(s, t, point.clone(), apex, point.clone()).unwrap();
    TransformationData {
        source,
        target,
        objects: [("x".to_string(), point)].into_iter().collect(),
        proarrows: vec![ProarrowComponent { word: id, cell }],
        arrows: Default::default(),
        products: Vec::new(),
    }
}

#[test]
fn identity_and_induced_transformations_pass() {
    for model in [boolean_model(), trivial_model()] {
        let r = check_transformation(&TransformationData::identity(&model).unwrap());
        assert!(r.passed(), "{:?}", r.violations);
    }
    let t = boolean_to_trivial();
    let r = check_transformation(&t);
    assert!(r.passed(), "{:?}", r.violations);
    let composite = TransformationData::identity(&t.source).unwrap().compose(&t).unwrap().compose(&TransformationData::identity(&t.target).unwrap()).unwrap();
    assert!(check_transformation(&composite).passed());
}

#[test]
fn swapped_product_component_breaks_projection_square() {
    let c = enumerate_cmon_categories(2, 1).remove(0);
    let model = cmon_category_to_model(&c).unwrap();
    let mut t = TransformationData::identity(&model).unwrap();
    assert!(check_transformation(&t).passed());
    let xx = ObWord::Prod(vec![x(), x()]);
    let set = model.evaluator().ob(&xx).unwrap();
    assert_eq!(set.len(), 4);
    let swap = FinFunction::from_fn(set.clone(), set, |i| 3 - i);
    t.products.push(ObjectOverride { word: xx, function: swap });
    let r = check_transformation(&t);
    assert_eq!(r.violations[0].axiom, Axiom::ProjectionSquare, "{:?}", r.violations);
}
