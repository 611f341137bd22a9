//! Property tests for the structural invariants, driven by seeded samplers.

mod common;

use proptest::prelude::*;

use dcat::dblcat::laws::{interchange, pentagon, triangle};
use dcat::dblcat::{
    check_companion, check_conjoint, mat_roundtrip_witness, restrict_span, span_roundtrip_witness, span_to_mat, DoubleCategory, Equipment, Mat, Span,
};
use dcat::family::{DblFam, FamArrow, FamObject, FamProarrow};
use dcat::finset::{
    copair_fns_into, coproduct_sets, limit_of_diagram, pair_fns, product_sets, pullback, DiagramShape, FinFunction, FinSet, SetDiagram, ShapeGenerator,
};
use dcat::universal::sample::{Sampler, Sizes};
use dcat::universal::*;

fn small() -> Sizes {
    Sizes {
        max_index: 2,
        max_carrier: 2,
        max_apex: 2,
        min_carrier: 1,
    }
}

fn all_with(dom: &FinSet, cod: &FinSet, keep: impl Fn(&FinFunction) -> bool) -> Vec<FinFunction> {
    FinFunction::all(dom, cod).into_iter().filter(keep).collect()
}

fn then(f: &FinFunction, g: &FinFunction) -> FinFunction {
    f.then(g).unwrap()
}

/// A chain of `len` composable span families.
fn family_chain(s: &mut Sampler, len: usize, sizes: &Sizes) -> Vec<FamProarrow<Span>> {
    let objects: Vec<FamObject<Span>> = (0..=len).map(|k| s.family_object(&format!("i{k}_"), sizes)).collect();
    (0..len)
        .map(|k| {
            let ix = s.indexing_span(&objects[k].indexing, &objects[k + 1].indexing, sizes.max_index);
            s.span_family_between(&objects[k], &objects[k + 1], ix, sizes).unwrap()
        })
        .collect()
}

fn random_fam_arrow(s: &mut Sampler, fam: &DblFam<Span>, covariant: bool) -> FamArrow<Span> {
    let sizes = Sizes::default();
    let x = s.family_object("i", &sizes);
    let y = s.family_object("j", &sizes);
    let (f0, comps) = if covariant {
        let f0 = s.function(&x.indexing, &y.indexing);
        let comps = (0..x.len()).map(|i| s.function(&x.assignment[i], &y.assignment[f0.apply(i)])).collect();
        (f0, comps)
    } else {
        let f0 = s.function(&y.indexing, &x.indexing);
        let comps = (0..y.len()).map(|j| s.function(&x.assignment[f0.apply(j)], &y.assignment[j])).collect();
        (f0, comps)
    };
    fam.arrow(x, y, f0, comps).unwrap()
}

fn to_mat(m: &FamProarrow<Span>) -> FamProarrow<Mat> {
    let obj = |x: &FamObject<Span>| FamObject::<Mat>::new(x.indexing.clone(), x.assignment.clone()).unwrap();
    DblFam::covariant(Mat)
        .proarrow(obj(&m.src), obj(&m.dst), m.indexing.clone(), m.components.iter().map(span_to_mat).collect())
        .unwrap()
}

fn entry_sizes(mm: &dcat::dblcat::MatProarrow) -> Vec<usize> {
    mm.entries().iter().map(FinSet::len).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_has_unique_mediating_maps(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.set(0, 3), s.set(0, 3), s.set(1, 3));
        let (f, g) = (s.function(&a, &c), s.function(&b, &c));
        let pb = pullback(&f, &g).unwrap();
        prop_assert_eq!(&pb, &pullback(&f.clone(), &g.clone()).unwrap());
        let t = s.set(0, 3);
        for p in FinFunction::all(&t, &a) {
            for q in all_with(&t, &b, |q| then(q, &g) == then(&p, &f)) {
                let count = FinFunction::all(&t, &pb.set).iter().filter(|h| then(h, &pb.p1) == p && then(h, &pb.p2) == q).count();
                prop_assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn limit_of_cospan_is_the_pullback(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.set(0, 3), s.set(0, 3), s.set(1, 3));
        let (f, g) = (s.function(&a, &c), s.function(&b, &c));
        let shape = DiagramShape {
            objects: FinSet::new(["A", "C", "B"]).unwrap(),
            generators: vec![
                ShapeGenerator { name: "f".into(), src: 0, dst: 1 },
                ShapeGenerator { name: "g".into(), src: 2, dst: 1 },
            ],
            relations: vec![],
        };
        let d = SetDiagram::new(shape, vec![a, c, b], vec![f.clone(), g.clone()]).unwrap();
        let (lim, legs) = limit_of_diagram(&d);
        let pb = pullback(&f, &g).unwrap();
        prop_assert_eq!(lim.len(), pb.set.len());
        for k in 0..lim.len() {
            prop_assert_eq!((legs[0].apply(k), legs[2].apply(k)), pb.pairs[k]);
        }
    }

    #[test]
    fn pairing_and_copairing_are_unique(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let sets: Vec<FinSet> = (0..s.size(0, 3)).map(|_| s.set(1, 3)).collect();
        let t = s.set(0, 3);
        let fns: Vec<FinFunction> = sets.iter().map(|x| s.function(&t, x)).collect();
        let (prod, pis) = product_sets(&sets);
        prop_assert_eq!(&(prod.clone(), pis.clone()), &product_sets(&sets));
        let h = pair_fns(&t, &fns).unwrap();
        for (p, f) in pis.iter().zip(&fns) {
            prop_assert_eq!(&then(&h, p), f);
        }
        let count = FinFunction::all(&t, &prod).iter().filter(|h| pis.iter().zip(&fns).all(|(p, f)| then(h, p) == *f)).count();
        prop_assert_eq!(count, 1);

        let cod = s.set(1, 3);
        let fns: Vec<FinFunction> = sets.iter().map(|x| s.function(x, &cod)).collect();
        let (sum, injs) = coproduct_sets(&sets);
        let h = copair_fns_into(&cod, &fns).unwrap();
        for (i, f) in injs.iter().zip(&fns) {
            prop_assert_eq!(&then(i, &h), f);
        }
        let count = FinFunction::all(&sum, &cod).iter().filter(|h| injs.iter().zip(&fns).all(|(i, f)| then(i, h) == *f)).count();
        prop_assert_eq!(count, 1);
    }

    #[test]
    fn span_interchange_and_coherence(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let feet: Vec<FinSet> = (0..5).map(|_| s.set(1, 3)).collect();
        let chain: Vec<_> = (0..4).map(|k| s.span(&feet[k], &feet[k + 1], 3)).collect();
        prop_assert!(triangle(&Span, &chain[0], &chain[1]).unwrap());
        prop_assert!(pentagon(&Span, &chain[0], &chain[1], &chain[2], &chain[3]).unwrap());
        let a = common::random_cell(&mut s, &chain[0], None, 3);
        let b = common::random_cell(&mut s, &chain[1], Some(a.on_right()), 3);
        let c = common::random_cell(&mut s, a.dst(), None, 3);
        let e = common::random_cell(&mut s, b.dst(), Some(c.on_right()), 3);
        prop_assert!(interchange(&Span, &a, &b, &c, &e).unwrap());
    }

    #[test]
    fn span_and_mat_round_trips_are_isos(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let feet: Vec<FinSet> = (0..3).map(|_| s.set(0, 3)).collect();
        let m = s.span(&feet[0], &feet[1], 3);
        let n = s.span(&feet[1], &feet[2], 3);
        let w = span_roundtrip_witness(&m);
        prop_assert!(w.is_iso());
        prop_assert_eq!(w.dst(), &m);
        let mm = s.matrix(&feet[0], &feet[1], 3);
        prop_assert!(Mat.invert_cell(&mat_roundtrip_witness(&mm)).is_some());
        let composite = span_to_mat(&Span.compose_pro(&m, &n).unwrap());
        let via_mat = span_to_mat(&m).compose(&span_to_mat(&n)).unwrap();
        prop_assert_eq!(entry_sizes(&composite), entry_sizes(&via_mat));
    }

    #[test]
    fn binding_equations_for_sampled_family_arrows(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for (fam, covariant) in [(DblFam::covariant(Span), true), (DblFam::contravariant(Span), false)] {
            let f = random_fam_arrow(&mut s, &fam, covariant);
            prop_assert!(check_companion(&fam, &fam.companion(&f).unwrap()).is_ok());
            prop_assert!(check_conjoint(&fam, &fam.conjoint(&f).unwrap()).is_ok());
        }
    }

    #[test]
    fn coproducts_are_strong(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m, n) = s.composable_pair(&Sizes::default()).unwrap();
        prop_assert!(coproduct_comparison(&Span, &m, &n).unwrap().is_iso());
        prop_assert!(coproduct_identity_comparison(&Span, &m.src).unwrap().is_iso());
        let (m, n) = s.mat_composable_pair(&Sizes::default()).unwrap();
        prop_assert!(coproduct_comparison(&Mat, &m, &n).unwrap().is_iso());
        prop_assert!(coproduct_identity_comparison(&Mat, &m.src).unwrap().is_iso());
    }

    #[test]
    fn bijective_legs_give_iso_strong_products(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m, n) = s.bijective_pair(&Sizes::default()).unwrap();
        let v = check_iso_strong(&Span, &m, &n).unwrap();
        prop_assert!(v.composite_iso() && v.identities_iso());
        let (m, n) = s.mat_bijective_pair(&Sizes::default()).unwrap();
        let v = check_iso_strong(&Mat, &m, &n).unwrap();
        prop_assert!(v.composite_iso() && v.identities_iso());
    }

    #[test]
    fn mat_and_span_constructions_agree(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.span_family(&Sizes::default()).unwrap();
        let mm = to_mat(&m);
        let (p, mp) = (span_product(&m).unwrap(), mat_product(&mm).unwrap());
        prop_assert_eq!((p.src.len(), p.dst.len()), (mp.src.len(), mp.dst.len()));
        prop_assert_eq!(entry_sizes(&span_to_mat(&p.pro)), entry_sizes(&mp.pro));
        let (c, mc) = (span_coproduct(&m).unwrap(), mat_coproduct(&mm).unwrap());
        prop_assert_eq!((c.src.len(), c.dst.len()), (mc.src.len(), mc.dst.len()));
        prop_assert_eq!(entry_sizes(&span_to_mat(&c.pro)), entry_sizes(&mc.pro));
    }

    #[test]
    fn products_via_restriction_are_isomorphic(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.span_family(&Sizes::default()).unwrap();
        let v = product_via_restriction(&Span, &m, |p, f, g| restrict_span(p, f, g)).unwrap();
        let inv = v.witness_inverse.unwrap();
        prop_assert_eq!(Span.compose_cells_vert(&v.witness, &inv).unwrap(), Span.id_cell_on_pro(&v.product.pro));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn family_coherence(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let fam = DblFam::covariant(Span);
        let chain = family_chain(&mut s, 4, &small());
        prop_assert!(triangle(&fam, &chain[0], &chain[1]).unwrap());
        prop_assert!(pentagon(&fam, &chain[0], &chain[1], &chain[2], &chain[3]).unwrap());
    }

    #[test]
    fn restrictions_are_cartesian(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y) = (s.set(1, 2), s.set(1, 2));
        let n = s.span(&x, &y, 2);
        let (w, z) = (s.set(0, 2), s.set(0, 2));
        let (f, g) = (s.function(&w, &x), s.function(&z, &y));
        let (_, rho) = restrict_span(&n, &f, &g).unwrap();
        let report = check_universal_cartesian(&Span, &rho, &CheckOptions { bound: 2, ..CheckOptions::default() });
        prop_assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn chosen_cones_pass_the_checker(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let opts = CheckOptions { bound: 2, ..CheckOptions::default() };
        let m = s.span_family(&small()).unwrap();
        prop_assert!(check_universal_product(&Span, &span_product(&m).unwrap(), &opts).passed());
        prop_assert!(check_universal_coproduct(&Span, &span_coproduct(&m).unwrap(), &opts).passed());
    }
}
