//! Seeded random documents for the round-trip suites.

#![allow(dead_code)]

use std::sync::OnceLock;

use dcat::dsl::*;
use dcat::finset::{FinFunction, FinSet, SetSpan, SpanMorphism};
use dcat::theory::{boolean_model, boolean_mutants, builtin_lc_mon_theory, trivial_model, ModelData, TransformationData, Verdict};
use dcat::universal::sample::{Sampler, Sizes};
use rand::seq::SliceRandom;
use rand::Rng;

const ALPHABET: &[&str] = &["a", "b", "x", "0", "1", "*", " ", "\"", "\\", "\n", "\t", "\u{7}", "é", "•", "𝟙", "{", "]", ":", ","];

fn models() -> &'static [ModelData] {
    static MODELS: OnceLock<Vec<ModelData>> = OnceLock::new();
    MODELS.get_or_init(|| {
        let mut v = vec![boolean_model(), trivial_model()];
        v.extend(boolean_mutants().into_iter().map(|(_, m)| m));
        v
    })
}

fn label(s: &mut Sampler) -> String {
    let n = s.size(0, 4);
    (0..n).map(|_| *ALPHABET.choose(s.rng()).unwrap()).collect()
}

/// A set of distinct random labels.
fn labelled_set(s: &mut Sampler, max: usize) -> FinSet {
    let n = s.size(0, max);
    let mut labels: Vec<String> = Vec::new();
    while labels.len() < n {
        let l = label(s);
        if !labels.contains(&l) {
            labels.push(l);
        }
    }
    FinSet::new(labels).unwrap()
}

fn relabel(s: &mut Sampler, x: &FinSet) -> FinSet {
    loop {
        let y = labelled_set(s, x.len());
        if y.len() == x.len() {
            return y;
        }
    }
}

fn report(s: &mut Sampler) -> Report {
    let failures = (0..s.size(0, 3))
        .map(|_| Failure {
            check: label(s),
            instance: label(s),
            detail: if s.rng().gen_bool(0.5) { Some(label(s)) } else { None },
        })
        .collect();
    let mut r = Report::new(s.size(0, 1000), failures);
    r.failures.shuffle(s.rng());
    r
}

/// A random valid document: sets, functions, spans, families, theories,
/// models, transformations and reports, some referring to others by name.
pub fn random_document(seed: u64) -> Document {
    let mut s = Sampler::new(seed);
    let mut doc = Document::new();
    let sizes = Sizes {
        max_index: 2,
        max_carrier: 2,
        max_apex: 2,
        min_carrier: 0,
    };
    for k in 0..s.size(1, 5) {
        let name = format!("{}{k}", label(&mut s));
        match s.size(0, 8) {
            0 => {
                let x = labelled_set(&mut s, 4);
                doc.insert(name, Entry::finset(&x));
            }
            1 => {
                let dom = labelled_set(&mut s, 3);
                let cod = labelled_set(&mut s, 3);
                if cod.is_empty() && !dom.is_empty() {
                    continue;
                }
                let f = s.function(&dom, &cod);
                if s.rng().gen_bool(0.5) {
                    let dn = format!("{name}.dom");
                    doc.insert(dn.clone(), Entry::finset(&dom));
                    let Entry::Function(mut b) = Entry::function(&f) else { unreachable!() };
                    b.dom = Ref::Name(dn);
                    doc.insert(name, Entry::Function(b));
                } else {
                    doc.insert(name, Entry::function(&f));
                }
            }
            2 => {
                let (x, y) = (labelled_set(&mut s, 2), labelled_set(&mut s, 2));
                let sp = s.span(&x, &y, 3);
                let apex = relabel(&mut s, sp.apex());
                let left = FinFunction::new(apex.clone(), x, sp.left().table().to_vec()).unwrap();
                let right = FinFunction::new(apex, y, sp.right().table().to_vec()).unwrap();
                let (ln, rn) = (format!("{name}.left"), format!("{name}.right"));
                doc.insert(ln.clone(), Entry::function(&left));
                doc.insert(rn.clone(), Entry::function(&right));
                doc.insert(name, Entry::Span(SpanBody { left: Ref::Name(ln), right: Ref::Name(rn) }));
            }
            3 => {
                let x = s.family_object("i", &sizes);
                doc.insert(name, Entry::family_object(&x));
            }
            4 => {
                let m = s.span_family(&sizes).unwrap();
                doc.insert(name, Entry::family_proarrow(&m));
            }
            5 => {
                doc.insert(name, Entry::theory(&builtin_lc_mon_theory()));
            }
            6 => {
                let m = models().choose(s.rng()).unwrap();
                doc.insert(name, Entry::model(m));
            }
            7 => {
                let (src, tgt) = (format!("{name}.source"), format!("{name}.target"));
                let m = models().choose(s.rng()).unwrap();
                doc.insert(src.clone(), Entry::model(m));
                doc.insert(tgt.clone(), Entry::model(m));
                let t = TransformationData::identity(m).unwrap();
                doc.insert(name, Entry::transformation(&t, &src, &tgt));
            }
            _ => {
                let r = report(&mut s);
                debug_assert_eq!(r.verdict == Verdict::Pass, r.failures.is_empty());
                doc.insert(name, Entry::report(r));
            }
        }
    }
    doc
}

/// The document as it reads back: report failures in canonical order.
pub fn normalized(doc: &Document) -> Document {
    let mut d = doc.clone();
    for e in d.entries.values_mut() {
        if let Entry::Report(r) = e {
            r.failures.sort();
        }
    }
    d
}

/// The composable pair whose product comparison is not invertible: all
/// carriers and index sets are singletons, `m` has two singleton members
/// over `A = {a1, a2}` (so its right indexing leg is not injective) and `n`
/// has one member with a two-element apex.
pub fn counterexample_document() -> Document {
    use dcat::family::{DblFam, FamObject};
    use dcat::finset::SetSpan;
    use dcat::dblcat::Span;

    let one = FinSet::singleton("*");
    let set = |labels: &[&str]| FinSet::new(labels.iter().copied()).unwrap();
    let to = |dom: &FinSet, cod: &FinSet| FinFunction::new(dom.clone(), cod.clone(), vec![0; dom.len()]).unwrap();
    let span = |apex: &FinSet| SetSpan::new(to(apex, &one), to(apex, &one)).unwrap();
    let (i, j, k) = (set(&["i"]), set(&["j"]), set(&["k"]));
    let (a, b) = (set(&["a1", "a2"]), set(&["b"]));
    let fam = DblFam::covariant(Span);
    let x = |idx: &FinSet| FamObject::new(idx.clone(), vec![one.clone()]).unwrap();
    let single = span(&set(&["s"]));
    let double = span(&set(&["t1", "t2"]));
    let m = fam.proarrow(x(&i), x(&j), SetSpan::new(to(&a, &i), to(&a, &j)).unwrap(), vec![single.clone(), single]).unwrap();
    let n = fam.proarrow(x(&j), x(&k), SetSpan::new(to(&b, &j), to(&b, &k)).unwrap(), vec![double]).unwrap();
    Document::new().with("m", Entry::family_proarrow(&m)).with("n", Entry::family_proarrow(&n))
}

/// The Boolean model of local commutative monoids, with its theory as a
/// separate entry.
pub fn boolean_model_document() -> Document {
    Document::new()
        .with("lc-mon", Entry::theory(&builtin_lc_mon_theory()))
        .with("boolean", Entry::model_of(&boolean_model(), "lc-mon"))
}

/// The report of checking the Boolean model with `μ` replaced by zero.
pub fn failure_report_document() -> Document {
    use dcat::theory::{check_model, Axiom};
    let (_, model) = boolean_mutants().into_iter().find(|(a, _)| *a == Axiom::Equation).unwrap();
    Document::new().with("report", Entry::report(Report::from(&check_model(&model, 3))))
}

/// Compares `text` with the golden file `name`, rewriting it instead when
/// `UPDATE_GOLDEN` is set.
pub fn golden(name: &str, text: &str) -> Result<(), String> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
    }
    let pinned = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if pinned == text {
        Ok(())
    } else {
        Err(format!("{} differs from the generated text", path.display()))
    }
}

/// A random cell out of `m`. The left foot map is `left` when given; the
/// target apex has at most `max_apex` elements beyond merges.
pub fn random_cell(s: &mut Sampler, m: &SetSpan, left: Option<&FinFunction>, max_apex: usize) -> SpanMorphism {
    let foot = |s: &mut Sampler, x: &FinSet| {
        let cod = s.set(1, 3);
        s.function(x, &cod)
    };
    let f = left.cloned().unwrap_or_else(|| foot(s, m.left_foot()));
    let g = foot(s, m.right_foot());
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut table = Vec::new();
    for e in 0..m.apex().len() {
        let key = (f.apply(m.left().apply(e)), g.apply(m.right().apply(e)));
        let same: Vec<usize> = (0..keys.len()).filter(|&k| keys[k] == key).collect();
        if !same.is_empty() && s.rng().gen_bool(0.5) {
            table.push(same[s.rng().gen_range(0..same.len())]);
        } else {
            keys.push(key);
            table.push(keys.len() - 1);
        }
    }
    while keys.len() < max_apex && s.rng().gen_bool(0.3) {
        let key = (s.rng().gen_range(0..f.cod().len()), s.rng().gen_range(0..g.cod().len()));
        keys.push(key);
    }
    let apex = FinSet::range(keys.len());
    let perm = s.bijection(&apex, &apex);
    let mut left_t = vec![0; keys.len()];
    let mut right_t = vec![0; keys.len()];
    for (k, key) in keys.iter().enumerate() {
        left_t[perm.apply(k)] = key.0;
        right_t[perm.apply(k)] = key.1;
    }
    let n = SetSpan::new(FinFunction::new(apex.clone(), f.cod().clone(), left_t).unwrap(), FinFunction::new(apex.clone(), g.cod().clone(), right_t).unwrap()).unwrap();
    let h = FinFunction::new(m.apex().clone(), apex, table.iter().map(|&k| perm.apply(k)).collect()).unwrap();
    SpanMorphism::new(m.clone(), n, f, h, g).unwrap()
}
