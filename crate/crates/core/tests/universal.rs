use std::time::Instant;

use dcat::dblcat::{check_companion, check_conjoint, restrict_span, DoubleCategory, IdentityFunctor, Mat, Op, Span, SpanToMat};
use dcat::family::{DblFam, Delta, FamArrow, FamObject, FamProarrow, Variance};
use dcat::finset::{product_sets, FinFunction, FinSet, SetSpan};
use dcat::universal::mutants::{drop_limit_constraint, redirect_coprojection};
use dcat::universal::sample::{Sampler, Sizes};
use dcat::universal::*;

fn one(label: &str) -> FinSet {
    FinSet::singleton(label)
}

fn span(apex: usize, x: &FinSet, y: &FinSet, left: Vec<usize>, right: Vec<usize>) -> SetSpan {
    let s = FinSet::range(apex);
    SetSpan::new(FinFunction::new(s.clone(), x.clone(), left).unwrap(), FinFunction::new(s, y.clone(), right).unwrap()).unwrap()
}

fn family(x: Vec<FinSet>, y: Vec<FinSet>, indexing: SetSpan, comps: Vec<SetSpan>) -> FamProarrow<Span> {
    let src = FamObject::new(indexing.left_foot().clone(), x).unwrap();
    let dst = FamObject::new(indexing.right_foot().clone(), y).unwrap();
    DblFam::covariant(Span).proarrow(src, dst, indexing, comps).unwrap()
}

fn index_span(i: usize, j: usize, left: Vec<usize>, right: Vec<usize>) -> SetSpan {
    index_span_between(("i", i), ("j", j), left, right)
}

fn index_span_between(i: (&str, usize), j: (&str, usize), left: Vec<usize>, right: Vec<usize>) -> SetSpan {
    let fi = FinSet::new((0..i.1).map(|k| format!("{}{k}", i.0))).unwrap();
    let fj = FinSet::new((0..j.1).map(|k| format!("{}{k}", j.0))).unwrap();
    let a = FinSet::new((0..left.len()).map(|k| format!("a{k}"))).unwrap();
    SetSpan::new(FinFunction::new(a.clone(), fi, left).unwrap(), FinFunction::new(a, fj, right).unwrap()).unwrap()
}

fn small() -> Sizes {
    Sizes {
        max_index: 2,
        max_carrier: 2,
        max_apex: 2,
        min_carrier: 1,
    }
}

#[test]
fn local_product_of_two_spans_multiplies_apexes() {
    let x = one("*");
    let s = span(2, &x, &x, vec![0, 0], vec![0, 0]);
    let m = family(vec![x.clone()], vec![x.clone()], index_span(1, 1, vec![0, 0], vec![0, 0]), vec![s.clone(), s]);
    let p = span_product(&m).unwrap();
    assert_eq!(p.pro.apex().len(), 4);
    p.validate_product(&Span).unwrap();
}

#[test]
fn parallel_product_is_pointwise() {
    let (x0, x1) = (FinSet::range(2), FinSet::range(3));
    let m0 = span(3, &x0, &x1, vec![0, 1, 1], vec![2, 0, 1]);
    let m1 = span(2, &x1, &x0, vec![0, 2], vec![1, 1]);
    let m = family(vec![x0.clone(), x1.clone()], vec![x1.clone(), x0.clone()], index_span(2, 2, vec![0, 1], vec![0, 1]), vec![m0, m1]);
    let p = span_product(&m).unwrap();
    assert_eq!(p.src.len(), product_sets(&[x0.clone(), x1.clone()]).0.len());
    assert_eq!(p.pro.apex().len(), 6);
    let mut seen = std::collections::BTreeSet::new();
    for k in 0..p.pro.apex().len() {
        seen.insert((p.cells[0].on_apex().apply(k), p.cells[1].on_apex().apply(k)));
    }
    assert_eq!(seen.len(), 6);
}

#[test]
fn coproduct_apex_counts_tags() {
    let x = one("*");
    let m = family(
        vec![x.clone()],
        vec![x.clone()],
        index_span(1, 1, vec![0, 0], vec![0, 0]),
        vec![span(1, &x, &x, vec![0], vec![0]), span(2, &x, &x, vec![0, 0], vec![0, 0])],
    );
    let s = span_coproduct(&m).unwrap();
    assert_eq!(s.pro.apex().len(), 3);
    s.validate_coproduct(&Span).unwrap();
}

#[test]
fn empty_member_set_gives_empty_summit() {
    let x = FinSet::range(2);
    let m = family(vec![x.clone()], vec![x.clone(), x.clone()], index_span(1, 2, vec![], vec![]), vec![]);
    let s = span_coproduct(&m).unwrap();
    assert!(s.pro.apex().is_empty());
    assert_eq!(s.dst.len(), 4);
}

#[test]
fn laxity_counterexample() {
    let x = one("*");
    let m = family(
        vec![x.clone()],
        vec![x.clone()],
        index_span(1, 1, vec![0, 0], vec![0, 0]),
        vec![span(1, &x, &x, vec![0], vec![0]), span(1, &x, &x, vec![0], vec![0])],
    );
    let n = family(vec![x.clone()], vec![x.clone()], index_span_between(("j", 1), ("k", 1), vec![0], vec![0]), vec![span(2, &x, &x, vec![0, 0], vec![0, 0])]);
    let c = product_comparison(&Span, &m, &n).unwrap();
    assert_eq!(c.kind, ComparisonKind::PiComp);
    assert_eq!(c.cell.src().apex().len(), 2);
    assert_eq!(c.cell.dst().apex().len(), 4);
    assert!(!c.is_iso());
    let v = check_iso_strong(&Span, &m, &n).unwrap();
    assert!(!v.legs_bijective);
    assert!(!v.composite_iso());
    assert!(v.identities_iso());
}

#[test]
fn span_and_mat_coproducts_are_strong() {
    let mut s = Sampler::new(11);
    for _ in 0..20 {
        let (m, n) = s.composable_pair(&Sizes::default()).unwrap();
        assert!(coproduct_comparison(&Span, &m, &n).unwrap().is_iso());
        assert!(coproduct_identity_comparison(&Span, &m.src).unwrap().is_iso());
        let (m, n) = s.mat_composable_pair(&Sizes::default()).unwrap();
        assert!(coproduct_comparison(&Mat, &m, &n).unwrap().is_iso());
        assert!(coproduct_identity_comparison(&Mat, &m.dst).unwrap().is_iso());
    }
}

#[test]
fn bijective_legs_give_iso_products() {
    let mut s = Sampler::new(12);
    for _ in 0..20 {
        let (m, n) = s.bijective_pair(&Sizes::default()).unwrap();
        let v = check_iso_strong(&Span, &m, &n).unwrap();
        assert!(v.legs_bijective && v.composite_iso() && v.identities_iso());
        let (m, n) = s.mat_bijective_pair(&Sizes::default()).unwrap();
        let v = check_iso_strong(&Mat, &m, &n).unwrap();
        assert!(v.legs_bijective && v.composite_iso() && v.identities_iso());
    }
}

#[test]
fn chosen_products_and_coproducts_pass_the_checker() {
    let opts = CheckOptions { bound: 2, ..CheckOptions::default() };
    let mut s = Sampler::new(13);
    let start = Instant::now();
    for _ in 0..10 {
        let m = s.span_family(&small()).unwrap();
        let p = check_universal_product(&Span, &span_product(&m).unwrap(), &opts);
        assert!(p.passed() && !p.partial, "{p:?}");
        let c = check_universal_coproduct(&Span, &span_coproduct(&m).unwrap(), &opts);
        assert!(c.passed() && !c.partial, "{c:?}");
    }
    eprintln!("checker on 10 families: {:?}", start.elapsed());
}

#[test]
fn empty_family_product_is_local_terminal() {
    let x = one("*");
    let m = family(vec![x.clone()], vec![x.clone()], index_span(1, 1, vec![], vec![]), vec![]);
    let p = span_product(&m).unwrap();
    assert_eq!(p.pro.apex().len(), 1);
    let r = check_universal_product(&Span, &p, &CheckOptions { bound: 2, ..CheckOptions::default() });
    assert!(r.passed());
}

#[test]
fn mat_product_entries() {
    let x = one("*");
    let mm = |n: usize| dcat::dblcat::span_to_mat(&span(n, &x, &x, vec![0; n], vec![0; n]));
    let src = FamObject::new(one("i0"), vec![x.clone()]).unwrap();
    let dst = FamObject::new(one("j0"), vec![x.clone()]).unwrap();
    let m = DblFam::covariant(Mat)
        .proarrow(src, dst, index_span(1, 1, vec![0, 0], vec![0, 0]), vec![mm(1), mm(2)])
        .unwrap();
    let p = mat_product(&m).unwrap();
    assert_eq!(p.pro.entry(0, 0).len(), 2);
    let s = mat_coproduct(&m).unwrap();
    assert_eq!(s.pro.entry(0, 0).len(), 3);
}

#[test]
fn mutants_are_caught() {
    let opts = CheckOptions { bound: 2, ..CheckOptions::default() };
    let mut s = Sampler::new(14);
    let (mut dropped, mut redirected) = (0, 0);
    for _ in 0..200 {
        if dropped >= 3 && redirected >= 3 {
            break;
        }
        let m = s.span_family(&small()).unwrap();
        if dropped < 3 {
            if let Some(bad) = drop_limit_constraint(&m).unwrap() {
                bad.validate_product(&Span).unwrap();
                let r = check_universal_product(&Span, &bad, &opts);
                assert!(!r.passed());
                assert!(r.failures.iter().any(|f| f.factorizations >= 2 && f.confirmed));
                dropped += 1;
            }
        }
        if redirected < 3 {
            if let Some(bad) = redirect_coprojection(&m).unwrap() {
                bad.validate_coproduct(&Span).unwrap();
                let r = check_universal_coproduct(&Span, &bad, &opts);
                assert!(!r.passed());
                assert!(r.failures.iter().all(|f| f.confirmed));
                redirected += 1;
            }
        }
    }
    assert_eq!((dropped, redirected), (3, 3));
}

#[test]
fn structure_arrows_have_companions_and_conjoints() {
    let mut s = Sampler::new(15);
    for _ in 0..20 {
        let x = s.family_object("i", &Sizes::default());
        let j = s.set(0, 3);
        let f0 = s.function(&j, &x.indexing);
        let st = structure_arrow(&Span, &f0, &x).unwrap();
        check_companion(&Span, &st.companion).unwrap();
        check_conjoint(&Span, &st.conjoint).unwrap();
    }
}

#[test]
fn identity_structure_arrow() {
    let x = FamObject::new(FinSet::range(2), vec![FinSet::range(2), FinSet::range(3)]).unwrap();
    let st = structure_arrow(&Span, &FinFunction::identity(&x.indexing), &x).unwrap();
    assert!(st.arrow.is_identity());
    assert!(st.companion.proarrow.is_identity());
    assert!(st.conjoint.proarrow.is_identity());
}

#[test]
fn empty_structure_arrow_is_terminal_map() {
    let x = FamObject::new(one("*"), vec![FinSet::range(3)]).unwrap();
    let st = structure_arrow(&Span, &FinFunction::new(FinSet::empty(), one("*"), vec![]).unwrap(), &x).unwrap();
    assert_eq!(st.arrow.cod().len(), 1);
    assert_eq!(st.companion.proarrow.apex().len(), 3);
}

#[test]
fn structure_arrow_rejects_mismatched_index_map() {
    let x = FamObject::new(FinSet::range(2), vec![FinSet::range(2), FinSet::range(3)]).unwrap();
    let f0 = FinFunction::identity(&FinSet::range(3));
    assert!(structure_arrow(&Span, &f0, &x).is_err());
}

#[test]
fn diagonal_proarrows() {
    let d = diagonal_proarrow(&Span, &one("*")).unwrap();
    assert_eq!(d.proarrow.apex().len(), 1);
    let x = FinSet::range(2);
    let d = diagonal_proarrow(&Span, &x).unwrap();
    assert_eq!(d.proarrow.apex().len(), 2);
    assert!(d.proarrow.left().is_bijection());
    let diag: Vec<usize> = (0..2).map(|e| d.arrow.apply(e)).collect();
    for (s, &e) in d.proarrow.right().table().iter().zip(d.proarrow.left().table()) {
        assert_eq!(*s, diag[e]);
    }
    for n in 0..=3 {
        let x = FinSet::range(n);
        let d = diagonal_proarrow(&Span, &x).unwrap();
        let pair = dcat::dblcat::BindingPair {
            arrow: d.arrow.clone(),
            proarrow: d.proarrow.clone(),
            unit: d.unit.clone(),
            counit: d.counit.clone(),
        };
        check_companion(&Span, &pair).unwrap();
        // The unit projects to identities and the counit's projections are
        // the diagonal's own projections.
        for (i, p) in d.product.cells.iter().enumerate() {
            assert_eq!(Span.compose_cells_vert(&d.unit, p).unwrap(), Span.id_cell_on_arrow(&FinFunction::identity(&x)));
            let (_, pis) = product_sets(&[x.clone(), x.clone()]);
            let counit_then = Span.compose_cells_vert(&d.counit, &Span.id_cell_on_arrow(&pis[i])).unwrap();
            assert_eq!(counit_then, *p);
        }
    }
}

#[test]
fn products_via_restriction_match_chosen_products() {
    let mut s = Sampler::new(16);
    for _ in 0..30 {
        let m = s.span_family(&Sizes::default()).unwrap();
        let v = product_via_restriction(&Span, &m, |p, f, g| restrict_span(p, f, g)).unwrap();
        assert!(v.witness_inverse.is_some());
        v.product.validate_product(&Span).unwrap();
    }
}

#[test]
fn restriction_of_products_is_cartesian() {
    let mut s = Sampler::new(17);
    let sizes = small();
    let fam = DblFam::contravariant(Span);
    let opts = CheckOptions { bound: 2, ..CheckOptions::default() };
    for _ in 0..5 {
        let n = s.span_family(&sizes).unwrap();
        let arrow_into = |s: &mut Sampler, w: &FamObject<Span>| -> FamArrow<Span> {
            let x = s.family_object("u", &sizes);
            let f0 = s.function(&w.indexing, &x.indexing);
            let comps = (0..w.len()).map(|k| s.function(&x.assignment[f0.apply(k)], &w.assignment[k])).collect();
            fam.arrow(x, w.clone(), f0, comps).unwrap()
        };
        let f = arrow_into(&mut s, &n.src);
        let g = arrow_into(&mut s, &n.dst);
        let r = restriction_of_products(&Span, &n, &f, &g, |p, a, b| restrict_span(p, a, b)).unwrap();
        let report = check_universal_cartesian(&Span, &r.cell, &opts);
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn restriction_along_identities_is_the_product() {
    let mut s = Sampler::new(18);
    let fam = DblFam::contravariant(Span);
    let n = s.span_family(&Sizes::default()).unwrap();
    let (f, g) = (fam.id_arrow(&n.src), fam.id_arrow(&n.dst));
    let r = restriction_of_products(&Span, &n, &f, &g, |p, a, b| restrict_span(p, a, b)).unwrap();
    assert_eq!(r.product.pro.apex().len(), span_product(&n).unwrap().pro.apex().len());
    assert!(Span.invert_cell(&r.cell).is_some());
}

#[test]
fn preservation_comparisons() {
    let mut s = Sampler::new(19);
    for _ in 0..10 {
        let m = s.span_family(&Sizes::default()).unwrap();
        let id = product_preservation(&IdentityFunctor(Span), &m).unwrap();
        assert!(id.is_iso());
        assert!(id.src_arrow.is_identity() && id.dst_arrow.is_identity());
        assert_eq!(id.pro.cell, Span.id_cell_on_pro(&span_product(&m).unwrap().pro));
        let phi = coproduct_preservation(&SpanToMat, &m).unwrap();
        assert!(phi.is_iso());
        assert_eq!(phi.pro.kind, ComparisonKind::PhiPro);
    }
}

#[test]
fn delta_preserves_singleton_indexed_products() {
    let x = FinSet::range(2);
    let m = family(vec![x.clone()], vec![x.clone()], index_span(1, 1, vec![0], vec![0]), vec![span(2, &x, &x, vec![0, 1], vec![1, 1])]);
    let p = product_preservation(&Delta::new(Span, Variance::Contravariant), &m).unwrap();
    assert!(p.is_iso());
    let fam = DblFam::contravariant(Span);
    assert_ne!(p.pro.cell, fam.id_cell_on_pro(&fam.cell_top(&p.pro.cell)));
}

#[test]
fn delta_does_not_preserve_two_member_products() {
    let x = FinSet::range(2);
    let m = family(
        vec![x.clone(), x.clone()],
        vec![x.clone()],
        index_span(2, 1, vec![0, 1], vec![0, 0]),
        vec![span(2, &x, &x, vec![0, 1], vec![1, 1]), span(1, &x, &x, vec![1], vec![0])],
    );
    let p = product_preservation(&Delta::new(Span, Variance::Contravariant), &m).unwrap();
    assert!(!p.is_iso());
}

#[test]
fn op_coproduct_checks_mirror_product_checks() {
    let opts = CheckOptions { bound: 2, ..CheckOptions::default() };
    let mut s = Sampler::new(20);
    for _ in 0..5 {
        let m = s.span_family(&small()).unwrap();
        let p = span_product(&m).unwrap();
        let direct = check_universal_product(&Span, &p, &opts);
        let op = Op(Span);
        let transported = check_universal_coproduct(&op, &p.clone().retag::<Op<Span>>(), &opts);
        assert_eq!(direct.passed(), transported.passed());
        assert_eq!(direct.cases_tried, transported.cases_tried);
        if let Some(bad) = drop_limit_constraint(&m).unwrap() {
            let direct = check_universal_product(&Span, &bad, &opts);
            let transported = check_universal_coproduct(&op, &bad.clone().retag::<Op<Span>>(), &opts);
            assert_eq!(direct.passed(), transported.passed());
        }
        let _ = Op(Span).coproduct(&retag_family::<Span, Op<Span>>(m.clone())).unwrap();
    }
}

#[test]
fn comparisons_reject_non_composable_pairs() {
    let mut s = Sampler::new(21);
    let m = s.span_family(&small()).unwrap();
    let n = family(vec![FinSet::range(3)], vec![FinSet::range(3)], index_span(1, 1, vec![0], vec![0]), vec![SetSpan::identity(&FinSet::range(3))]);
    for r in [product_comparison(&Span, &m, &n).map(|_| ()), coproduct_comparison(&Span, &m, &n).map(|_| ()), check_iso_strong(&Span, &m, &n).map(|_| ())] {
        assert!(matches!(r, Err(dcat::dblcat::DblError::NotComposable(_))), "{r:?}");
    }
}
