//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any fails.

mod common;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dcat::dblcat::laws::{interchange, pentagon, triangle};
use dcat::dblcat::{check_companion, check_conjoint, restrict_span, BindingPair, DoubleCategory, Equipment, Mat, MatCell, Op, Span};
use dcat::dsl::{parse_document, print_document};
use dcat::family::{terminal_dictionary, DblFam, FamObject};
use dcat::finset::{product_indices, product_sets, FinFunction, FinSet, SetSpan, SpanMorphism};
use dcat::theory::{
    boolean_model, boolean_mutants, check_model, cmon_category_to_model, enumerate_cmon_categories, laxators_at_product_words, model_to_cmon_category,
    trivial_model,
};
use dcat::universal::mutants::{drop_limit_constraint, redirect_coprojection};
use dcat::universal::sample::{Sampler, Sizes};
use dcat::universal::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:.1?}, limit {limit:?}"))
    }
}

fn small() -> Sizes {
    Sizes {
        max_index: 2,
        max_carrier: 2,
        max_apex: 2,
        min_carrier: 1,
    }
}

/// Every span `range(a) <- range(k) -> range(b)`, labelled apexes included.
fn all_spans(max_foot: usize, max_apex: usize) -> Vec<SetSpan> {
    let mut out = Vec::new();
    for a in 0..=max_foot {
        for b in 0..=max_foot {
            out.extend(SetSpan::all_between(&FinSet::range(a), &FinSet::range(b), max_apex, false));
        }
    }
    out
}

fn all_cells(spans: &[SetSpan]) -> Vec<SpanMorphism> {
    let mut out = Vec::new();
    for m in spans {
        for n in spans {
            for f in FinFunction::all(m.left_foot(), n.left_foot()) {
                for g in FinFunction::all(m.right_foot(), n.right_foot()) {
                    out.extend(SpanMorphism::all_in_frame(m, n, &f, &g));
                }
            }
        }
    }
    out
}

fn random_chain(s: &mut Sampler, len: usize) -> Vec<SetSpan> {
    let feet: Vec<FinSet> = (0..=len).map(|_| s.set(1, 3)).collect();
    (0..len).map(|k| s.span(&feet[k], &feet[k + 1], 3)).collect()
}

fn span_coherence() -> Outcome {
    let start = Instant::now();
    let spans = all_spans(2, 2);
    let by_src = group(&spans, |m| m.left_foot().len());
    let mut triangles = 0;
    let mut pentagons = 0;
    for m in &spans {
        for n in &by_src[&m.right_foot().len()] {
            ensure!(triangle(&Span, m, n).map_err(err)?, "triangle fails at {m:?}, {n:?}");
            triangles += 1;
            for p in &by_src[&n.right_foot().len()] {
                for q in &by_src[&p.right_foot().len()] {
                    ensure!(pentagon(&Span, m, n, p, q).map_err(err)?, "pentagon fails at {m:?}, {n:?}, {p:?}, {q:?}");
                    pentagons += 1;
                }
            }
        }
    }

    // Interchange over all cells between spans with feet of size at most 2
    // and apex at most 1, or feet at most 1 and apex at most 2.
    let mut cell_spans = all_spans(2, 1);
    cell_spans.extend(all_spans(1, 2).into_iter().filter(|m| m.apex().len() == 2));
    let cells = all_cells(&cell_spans);
    let interchanges = exhaustive_interchange(&cells)?;

    let mut s = Sampler::new(1);
    for _ in 0..200 {
        let chain = random_chain(&mut s, 4);
        ensure!(triangle(&Span, &chain[0], &chain[1]).map_err(err)?, "sampled triangle fails at {chain:?}");
        ensure!(pentagon(&Span, &chain[0], &chain[1], &chain[2], &chain[3]).map_err(err)?, "sampled pentagon fails at {chain:?}");
        let a = common::random_cell(&mut s, &chain[0], None, 3);
        let b = common::random_cell(&mut s, &chain[1], Some(a.on_right()), 3);
        let c = common::random_cell(&mut s, a.dst(), None, 3);
        let e = common::random_cell(&mut s, b.dst(), Some(c.on_right()), 3);
        ensure!(interchange(&Span, &a, &b, &c, &e).map_err(err)?, "sampled interchange fails at {a:?}, {b:?}, {c:?}, {e:?}");
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{triangles} triangles, {pentagons} pentagons, {interchanges} interchanges exhaustive; 200 sampled of each at size 3"
    ))
}

/// Checks `(a ⊙ b) ; (c ⊙ e) = (a ; c) ⊙ (b ; e)` for every quadruple of
/// `cells` where both sides are defined, sharing the partial composites.
fn exhaustive_interchange(cells: &[SpanMorphism]) -> Result<usize, String> {
    let by_top = group(cells, |a| a.src().clone());
    let index: HashMap<&SpanMorphism, usize> = cells.iter().enumerate().map(|(k, a)| (a, k)).collect();
    // Vertical pairs (a, c) with their composite, keyed by the right and by
    // the left foot maps of a and c.
    let mut pairs = Vec::new();
    let mut by_right: HashMap<(&FinFunction, &FinFunction), Vec<usize>> = HashMap::new();
    let mut by_left: HashMap<(&FinFunction, &FinFunction), Vec<usize>> = HashMap::new();
    for a in cells {
        for c in by_top.get(a.dst()).into_iter().flatten() {
            let ac = Span.compose_cells_vert(a, c).map_err(err)?;
            by_right.entry((a.on_right(), c.on_right())).or_default().push(pairs.len());
            by_left.entry((a.on_left(), c.on_left())).or_default().push(pairs.len());
            pairs.push((index[a], index[*c], ac));
        }
    }
    let mut count = 0;
    for (key, left) in &by_right {
        let Some(right) = by_left.get(key) else { continue };
        let mut ext: HashMap<(usize, usize), SpanMorphism> = HashMap::new();
        for &l in left {
            for &r in right {
                for (x, y) in [(pairs[l].0, pairs[r].0), (pairs[l].1, pairs[r].1)] {
                    if let Entry::Vacant(v) = ext.entry((x, y)) {
                        v.insert(Span.compose_cells_ext(&cells[x], &cells[y]).map_err(err)?);
                    }
                }
            }
        }
        for &l in left {
            let (a, c, ac) = &pairs[l];
            for &r in right {
                let (b, e, be) = &pairs[r];
                let lhs = Span.compose_cells_vert(&ext[&(*a, *b)], &ext[&(*c, *e)]).map_err(err)?;
                let rhs = Span.compose_cells_ext(ac, be).map_err(err)?;
                ensure!(lhs == rhs, "interchange fails at {:?}, {:?}, {:?}, {:?}", cells[*a], cells[*b], cells[*c], cells[*e]);
                count += 1;
            }
        }
    }
    Ok(count)
}

fn group<T, K: std::hash::Hash + Eq>(items: &[T], key: impl Fn(&T) -> K) -> HashMap<K, Vec<&T>> {
    let mut out: HashMap<K, Vec<&T>> = HashMap::new();
    for t in items {
        out.entry(key(t)).or_default().push(t);
    }
    out
}

fn span_cell_bijective(a: &SpanMorphism) -> bool {
    a.on_left().is_bijection() && a.on_apex().is_bijection() && a.on_right().is_bijection()
}

fn mat_cell_bijective(a: &MatCell) -> bool {
    a.row().is_bijection() && a.col().is_bijection() && a.maps().iter().all(FinFunction::is_bijection)
}

fn coproduct_strength() -> Outcome {
    let start = Instant::now();
    let sizes = Sizes::default();
    let mut s = Sampler::new(2);
    for _ in 0..200 {
        let (m, n) = s.composable_pair(&sizes).map_err(err)?;
        let c = coproduct_comparison(&Span, &m, &n).map_err(err)?;
        ensure!(c.is_iso() && span_cell_bijective(&c.cell), "Σ_(m,n) not iso in Span for {m:?}, {n:?}");
        let u = coproduct_identity_comparison(&Span, &m.src).map_err(err)?;
        ensure!(u.is_iso() && span_cell_bijective(&u.cell), "Σ_x not iso in Span for {:?}", m.src);

        let (m, n) = s.mat_composable_pair(&sizes).map_err(err)?;
        let c = coproduct_comparison(&Mat, &m, &n).map_err(err)?;
        ensure!(c.is_iso() && mat_cell_bijective(&c.cell), "Σ_(m,n) not iso in Mat for {m:?}, {n:?}");
        let u = coproduct_identity_comparison(&Mat, &m.src).map_err(err)?;
        ensure!(u.is_iso() && mat_cell_bijective(&u.cell), "Σ_x not iso in Mat for {:?}", m.src);
    }
    within(start, Duration::from_secs(60))?;
    Ok("200 pairs in Span, 200 in Mat".into())
}

fn laxity_counterexample() -> Outcome {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/counterexample.dcat.json");
    let doc = parse_document(&std::fs::read_to_string(path).map_err(err)?).map_err(err)?;
    let m = doc.family_proarrow("m").map_err(err)?;
    let n = doc.family_proarrow("n").map_err(err)?;
    let singleton = |x: &FamObject<Span>| x.assignment.iter().all(|c| c.len() == 1);
    ensure!(singleton(&m.src) && singleton(&m.dst) && singleton(&n.dst), "feet are not singletons");
    let a = m.indexing.apex();
    ensure!(a.len() == 2 && a.contains("a1") && a.contains("a2"), "A is {a:?}");
    ensure!(!m.indexing.left().is_bijection() || !m.indexing.right().is_bijection(), "m has bijective legs");
    ensure!(m.components.iter().all(|c| c.apex().len() == 1), "M-entries are not singletons");
    ensure!(n.components.iter().any(|c| c.apex().len() == 2), "no N-entry of size 2");
    let c = product_comparison(&Span, &m, &n).map_err(err)?;
    let (src, dst) = (c.cell.src().apex().len(), c.cell.dst().apex().len());
    ensure!((src, dst) == (2, 4), "apexes {src} -> {dst}");
    ensure!(!c.is_iso(), "Π_(m,n) is iso");
    Ok("Π_(m,n) has apexes 2 -> 4 and is not iso".into())
}

fn iso_strong() -> Outcome {
    let mut s = Sampler::new(4);
    for _ in 0..200 {
        let (m, n) = s.bijective_pair(&Sizes::default()).map_err(err)?;
        let v = check_iso_strong(&Span, &m, &n).map_err(err)?;
        ensure!(v.legs_bijective, "sampled legs not bijective");
        ensure!(v.composite_iso() && span_cell_bijective(&v.composite.cell), "Π_(m,n) not iso for {m:?}, {n:?}");
        ensure!(v.identities_iso(), "Π_x not iso for {m:?}");
        let (m, n) = s.mat_bijective_pair(&Sizes::default()).map_err(err)?;
        let v = check_iso_strong(&Mat, &m, &n).map_err(err)?;
        ensure!(v.composite_iso() && mat_cell_bijective(&v.composite.cell), "Π_(m,n) not iso in Mat for {m:?}, {n:?}");
        ensure!(v.identities_iso(), "Π_x not iso in Mat for {m:?}");
    }
    Ok("200 pairs in Span, 200 in Mat".into())
}

fn universal_properties() -> Outcome {
    let start = Instant::now();
    let opts = CheckOptions {
        bound: 3,
        budget: usize::MAX,
    };
    let mut s = Sampler::new(5);
    let (mut cases, mut dropped, mut redirected) = (0, 0, 0);
    for _ in 0..50 {
        let m = s.span_family(&small()).map_err(err)?;
        let p = check_universal_product(&Span, &span_product(&m).map_err(err)?, &opts);
        ensure!(p.passed() && !p.partial, "spanProduct: {p:?}");
        let c = check_universal_coproduct(&Span, &span_coproduct(&m).map_err(err)?, &opts);
        ensure!(c.passed() && !c.partial, "spanCoproduct: {c:?}");
        cases += p.cases_tried + c.cases_tried;
        if let Some(bad) = drop_limit_constraint(&m).map_err(err)? {
            let r = check_universal_product(&Span, &bad, &opts);
            ensure!(r.failure_count >= 1, "dropped limit constraint passed for {m:?}");
            dropped += 1;
        }
        if let Some(bad) = redirect_coprojection(&m).map_err(err)? {
            let r = check_universal_coproduct(&Span, &bad, &opts);
            ensure!(r.failure_count >= 1, "redirected coprojection passed for {m:?}");
            redirected += 1;
        }
    }
    ensure!(dropped >= 1 && redirected >= 1, "mutants applied: {dropped} dropped, {redirected} redirected");
    within(start, Duration::from_secs(300))?;
    Ok(format!("50 families each, {cases} test cones; {dropped} + {redirected} mutants all caught"))
}

fn dictionary() -> Outcome {
    let r = terminal_dictionary::verify(2, usize::MAX).map_err(err)?;
    ensure!(r.passed() && !r.partial, "{:?}", r.failures);
    Ok(format!(
        "{} objects, {} arrows, {} proarrows, {} cells, {} compositions",
        r.objects, r.arrows, r.proarrows, r.cells, r.compositions
    ))
}

fn binding<D: Equipment>(d: &D, f: &D::Arr) -> Result<(), String> {
    check_companion(d, &d.companion(f).map_err(err)?).map_err(|e| format!("companion of {f:?}: {e}"))?;
    check_conjoint(d, &d.conjoint(f).map_err(err)?).map_err(|e| format!("conjoint of {f:?}: {e}"))
}

fn binding_equations() -> Outcome {
    let mut base = 0;
    for a in 0..=3 {
        for b in 0..=3 {
            for f in FinFunction::all(&FinSet::range(a), &FinSet::range(b)) {
                binding(&Span, &f)?;
                base += 1;
            }
        }
    }

    let mut family = 0;
    for fam in [DblFam::covariant(Span), DblFam::contravariant(Span)] {
        let objects = fam.objects(2);
        for x in &objects {
            for y in &objects {
                for f in fam.arrows_between(x, y) {
                    binding(&fam, &f)?;
                    family += 1;
                }
            }
        }
    }

    let mut structure = 0;
    for i in 0..=3 {
        let index = FinSet::range(i);
        for pick in product_indices(&vec![4; i]) {
            let x = FamObject::new(index.clone(), pick.iter().map(|&k| FinSet::range(k)).collect()).map_err(err)?;
            for j in 0..=3 {
                for f0 in FinFunction::all(&FinSet::range(j), &index) {
                    let st = structure_arrow(&Span, &f0, &x).map_err(err)?;
                    check_companion(&Span, &st.companion).map_err(|e| format!("Π({f0:?}) companion: {e}"))?;
                    check_conjoint(&Span, &st.conjoint).map_err(|e| format!("Π({f0:?}) conjoint: {e}"))?;
                    structure += 1;
                }
            }
        }
    }

    for k in 0..=3 {
        let x = FinSet::range(k);
        let d = diagonal_proarrow(&Span, &x).map_err(err)?;
        let pair = BindingPair {
            arrow: d.arrow.clone(),
            proarrow: d.proarrow.clone(),
            unit: d.unit.clone(),
            counit: d.counit.clone(),
        };
        check_companion(&Span, &pair).map_err(|e| format!("δ_{k}: {e}"))?;
        let (_, pis) = product_sets(&[x.clone(), x.clone()]);
        for (i, p) in d.product.cells.iter().enumerate() {
            let unit_then = Span.compose_cells_vert(&d.unit, p).map_err(err)?;
            ensure!(unit_then == Span.id_cell_on_arrow(&FinFunction::identity(&x)), "δ_{k} unit projection {i}");
            let counit_then = Span.compose_cells_vert(&d.counit, &Span.id_cell_on_arrow(&pis[i])).map_err(err)?;
            ensure!(counit_then == *p, "δ_{k} counit projection {i}");
        }
    }
    Ok(format!("{base} functions, {family} family arrows, {structure} structure arrows, δ_x for |x| <= 3"))
}

fn characterization() -> Outcome {
    let mut s = Sampler::new(8);
    for _ in 0..100 {
        let m = s.span_family(&Sizes::default()).map_err(err)?;
        let v = product_via_restriction(&Span, &m, |p, f, g| restrict_span(p, f, g)).map_err(err)?;
        let chosen = span_product(&m).map_err(err)?;
        let inv = v.witness_inverse.as_ref().ok_or_else(|| format!("no inverse witness for {m:?}"))?;
        ensure!(v.witness.src() == &v.product.pro && v.witness.dst() == &chosen.pro, "witness frame");
        ensure!(
            Span.compose_cells_vert(&v.witness, inv).map_err(err)? == Span.id_cell_on_pro(&v.product.pro),
            "witness ; inverse is not the identity"
        );
        ensure!(
            Span.compose_cells_vert(inv, &v.witness).map_err(err)? == Span.id_cell_on_pro(&chosen.pro),
            "inverse ; witness is not the identity"
        );
        for (a, cell) in chosen.cells.iter().enumerate() {
            ensure!(Span.compose_cells_vert(&v.witness, cell).map_err(err)? == v.product.cells[a], "witness breaks projection {a}");
        }
    }
    Ok("100 families".into())
}

fn duality() -> Outcome {
    let opts = CheckOptions {
        bound: 2,
        ..CheckOptions::default()
    };
    let mut s = Sampler::new(9);
    let (mut cases, mut fails) = (0, 0);
    let op = Op(Span);
    while cases < 50 {
        let m = s.span_family(&small()).map_err(err)?;
        let mut cones = vec![span_product(&m).map_err(err)?];
        cones.extend(drop_limit_constraint(&m).map_err(err)?);
        for p in cones {
            let direct = check_universal_product(&Span, &p, &opts);
            let transported = check_universal_coproduct(&op, &p.clone().retag::<Op<Span>>(), &opts);
            ensure!(direct.passed() == transported.passed(), "verdicts differ for {m:?}");
            ensure!(direct.cases_tried == transported.cases_tried, "case counts differ for {m:?}");
            ensure!(direct.failure_count == transported.failure_count, "failure counts differ for {m:?}");
            cases += 1;
            fails += usize::from(!direct.passed());
        }
    }
    ensure!(fails > 0, "no failing case among {cases}");
    Ok(format!("{cases} cases, {fails} failing in both"))
}

fn theory() -> Outcome {
    let start = Instant::now();
    let r = check_model(&boolean_model(), 3);
    ensure!(r.passed(), "Boolean model: {:?}", r.violations);
    let mutants = boolean_mutants();
    ensure!(mutants.len() >= 5, "{} mutants", mutants.len());
    for (axiom, model) in &mutants {
        let r = check_model(model, 3);
        ensure!(!r.passed(), "{} mutant passed", axiom.id());
        ensure!(r.violations[0].axiom == *axiom, "{} mutant fails with {}", axiom.id(), r.violations[0].axiom.id());
    }
    let mut categories = 0;
    for objects in 1..=2 {
        for c in enumerate_cmon_categories(objects, 3) {
            let model = cmon_category_to_model(&c).map_err(err)?;
            let back = model_to_cmon_category(&model).map_err(err)?;
            ensure!(back == c, "round trip changes {c:?}");
            ensure!(cmon_category_to_model(&back).map_err(err)? == model, "model round trip changes {c:?}");
            categories += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("Boolean model passes, {} mutants caught, {categories} categories round trip", mutants.len()))
}

fn laxators() -> Outcome {
    let mut models = vec![boolean_model(), trivial_model()];
    for c in enumerate_cmon_categories(1, 3) {
        models.push(cmon_category_to_model(&c).map_err(err)?);
    }
    let mut pairs = 0;
    for model in &models {
        let (rows, _) = laxators_at_product_words(model, 2);
        for row in rows {
            let derived = row.derived.map_err(err)?;
            ensure!(derived == row.recomputed.map_err(err)?, "laxator at {:?} ⊙ {:?} differs", row.left, row.right);
            pairs += 1;
        }
    }
    ensure!(pairs > 0, "no product words");
    Ok(format!("{pairs} word pairs over {} models", models.len()))
}

fn dsl() -> Outcome {
    for seed in 0..1000 {
        let doc = common::random_document(seed);
        let text = print_document(&doc);
        let back = parse_document(&text).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(back == common::normalized(&doc), "seed {seed}: document changed");
        ensure!(print_document(&back) == text, "seed {seed}: text changed");
    }
    let goldens = [
        ("counterexample.dcat.json", common::counterexample_document()),
        ("boolean-model.dcat.json", common::boolean_model_document()),
        ("failure-report.dcat.json", common::failure_report_document()),
    ];
    for (name, doc) in goldens {
        let text = print_document(&doc);
        common::golden(name, &text)?;
        ensure!(print_document(&parse_document(&text).map_err(err)?) == text, "{name} is not a fixpoint");
    }
    Ok("1000 documents round trip, 3 golden files stable".into())
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("span coherence", span_coherence),
        ("coproduct strength", coproduct_strength),
        ("laxity counterexample", laxity_counterexample),
        ("iso-strong law", iso_strong),
        ("universal properties", universal_properties),
        ("DblFam(1) = Span", dictionary),
        ("binding equations", binding_equations),
        ("characterization", characterization),
        ("duality", duality),
        ("theory", theory),
        ("laxators at product words", laxators),
        ("DSL", dsl),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(summary) => println!("criterion {:>2} PASS {name}: {summary} [{t:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{t:.1?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
