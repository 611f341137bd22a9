//! Checking that model data is a product-preserving lax functor into Span.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::{Evaluator, ModelData};
use super::words::{normalize_ob, ArrWord, CellWord, ObWord, ProWord};
use super::{TheoryError, TheoryPresentation, TheoryResult};
use crate::dblcat::{DoubleCategory, Span};
use crate::finset::{FinFunction, SpanMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// A table entry is missing or has the wrong frame.
    Table,
    Associativity,
    Unit,
    ProductPreservation,
    LaxatorNaturality,
    Equation,
    LaxatorProduct,
    UnitorProduct,
    ProjectionSquare,
    ComponentNaturality,
    ComponentLaxator,
    ComponentUnitor,
    NaturalityComparisonProduct,
}

impl Axiom {
    pub fn id(&self) -> &'static str {
        match self {
            Axiom::Table => "table",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::ProductPreservation => "product-preservation",
            Axiom::LaxatorNaturality => "laxator-naturality",
            Axiom::Equation => "equation",
            Axiom::LaxatorProduct => "laxator-product",
            Axiom::UnitorProduct => "unitor-product",
            Axiom::ProjectionSquare => "projection-square",
            Axiom::ComponentNaturality => "component-naturality",
            Axiom::ComponentLaxator => "component-laxator",
            Axiom::ComponentUnitor => "component-unitor",
            Axiom::NaturalityComparisonProduct => "naturality-comparison-product",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One failed instance of an axiom, with the two sides when both could be
/// evaluated. Equation violations also keep the two cell words.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub instance: String,
    pub detail: Option<String>,
    pub words: Option<(CellWord, CellWord)>,
    pub cells: Option<(SpanMorphism, SpanMorphism)>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckStats {
    pub checked: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub stats: CheckStats,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(|v| v.axiom).collect()
    }
}

#[derive(Default)]
pub(crate) struct Collector {
    violations: Vec<Violation>,
    stats: CheckStats,
}

impl Collector {
    pub(crate) fn fail(&mut self, axiom: Axiom, instance: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom,
            instance: instance.into(),
            detail: Some(detail.into()),
            words: None,
            cells: None,
        });
    }

    /// Records an equality check between two evaluated sides.
    pub(crate) fn compare(&mut self, axiom: Axiom, instance: impl Into<String>, lhs: TheoryResult<SpanMorphism>, rhs: TheoryResult<SpanMorphism>) {
        self.stats.checked += 1;
        let instance = instance.into();
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => self.violations.push(Violation {
                axiom,
                instance,
                detail: None,
                words: None,
                cells: Some((l, r)),
            }),
            (Err(e), _) | (_, Err(e)) => self.fail(axiom, instance, e.to_string()),
        }
    }

    pub(crate) fn skip(&mut self, n: usize) {
        self.stats.skipped += n;
    }

    pub(crate) fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            verdict: if self.violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
            violations: self.violations,
            stats: self.stats,
        }
    }
}

/// Proarrow words the model must interpret on generators: identities on
/// object generators and proarrow generators.
pub(crate) fn atoms(t: &TheoryPresentation) -> Vec<(ProWord, ObWord, ObWord)> {
    let mut out: Vec<_> = t
        .objects
        .iter()
        .map(|x| (ProWord::Id(ObWord::gen(x)), ObWord::gen(x), ObWord::gen(x)))
        .collect();
    out.extend(t.proarrows.iter().map(|g| (ProWord::Gen(g.name.clone()), normalize_ob(&g.src), normalize_ob(&g.dst))));
    out
}

fn collect_pro(t: &TheoryPresentation, p: &ProWord, out: &mut BTreeSet<ProWord>) {
    if let Ok(n) = t.normalize_pro(p) {
        collect_normal(&n, out);
    }
}

fn collect_normal(p: &ProWord, out: &mut BTreeSet<ProWord>) {
    if let ProWord::Prod(w) = p {
        for m in &w.members {
            collect_normal(m, out);
        }
        out.insert(p.clone());
    }
}

fn collect_cell(t: &TheoryPresentation, c: &CellWord, out: &mut BTreeSet<ProWord>) {
    if let Ok(f) = t.cell_frame(c) {
        collect_normal(&f.top, out);
        collect_normal(&f.bottom, out);
    }
    match c {
        CellWord::Gen(_) | CellWord::IdArr(_) => {}
        CellWord::IdPro(p) => collect_pro(t, p, out),
        CellWord::Vert(a, b) | CellWord::Ext(a, b) => {
            collect_cell(t, a, out);
            collect_cell(t, b, out);
        }
        CellWord::Proj { product, .. } => collect_pro(t, product, out),
        CellWord::Pair { top, bottom, components, .. } => {
            collect_pro(t, top, out);
            collect_pro(t, bottom, out);
            for k in components {
                collect_cell(t, k, out);
            }
        }
    }
}

/// Normalized product words mentioned by the presentation.
pub fn product_words(t: &TheoryPresentation) -> Vec<ProWord> {
    let mut out = BTreeSet::new();
    for g in &t.cells {
        collect_cell(t, &CellWord::Gen(g.name.clone()), &mut out);
    }
    for e in &t.equations {
        collect_cell(t, &e.lhs, &mut out);
        collect_cell(t, &e.rhs, &mut out);
    }
    out.into_iter().collect()
}

/// Product object words at the ends of the presentation's product words.
fn product_objects(words: &[ProWord]) -> Vec<ObWord> {
    let mut out = BTreeSet::new();
    for w in words.iter().filter_map(ProWord::as_prod) {
        for ends in [&w.src, &w.dst] {
            if ends.len() != 1 {
                out.insert(normalize_ob(&ObWord::Prod(ends.clone())));
            }
        }
    }
    out.into_iter().collect()
}

fn frame_of(m: &SpanMorphism) -> String {
    format!("{:?} => {:?}", m.src(), m.dst())
}

fn check_frame(c: &mut Collector, what: &str, cell: &SpanMorphism, src: TheoryResult<crate::finset::SetSpan>, dst: TheoryResult<crate::finset::SetSpan>, left: TheoryResult<FinFunction>, right: TheoryResult<FinFunction>) {
    c.stats.checked += 1;
    match (src, dst, left, right) {
        (Ok(s), Ok(d), Ok(l), Ok(r)) => {
            if cell.src() != &s || cell.dst() != &d || cell.on_left() != &l || cell.on_right() != &r {
                c.fail(Axiom::Table, what, format!("frame mismatch: got {}", frame_of(cell)));
            }
        }
        (Err(e), ..) | (_, Err(e), ..) | (_, _, Err(e), _) | (.., Err(e)) => c.fail(Axiom::Table, what, e.to_string()),
    }
}

fn check_tables(m: &ModelData, c: &mut Collector) {
    let t = &m.theory;
    let ev = m.evaluator();
    for x in &t.objects {
        c.stats.checked += 1;
        if !m.objects.contains_key(x) {
            c.fail(Axiom::Table, format!("object {x}"), "missing");
        }
        match m.identities.get(x) {
            None => c.fail(Axiom::Table, format!("identity {x}"), "missing"),
            Some(s) => {
                if let Some(o) = m.objects.get(x) {
                    if s.left_foot() != o || s.right_foot() != o {
                        c.fail(Axiom::Table, format!("identity {x}"), "feet differ from the object");
                    }
                }
            }
        }
        match m.unitors.get(x) {
            None => c.fail(Axiom::Table, format!("unitor {x}"), "missing"),
            Some(u) => {
                let o = ev.ob(&ObWord::gen(x));
                let id = o.as_ref().map(|o| FinFunction::identity(o)).map_err(Clone::clone);
                check_frame(
                    c,
                    &format!("unitor {x}"),
                    u,
                    o.clone().map(|o| crate::finset::SetSpan::identity(&o)),
                    ev.pro(&ProWord::Id(ObWord::gen(x))),
                    id.clone(),
                    id,
                );
            }
        }
    }
    if c.has(Axiom::Table) {
        return;
    }
    for g in &t.arrows {
        match m.arrows.get(&g.name) {
            None => c.fail(Axiom::Table, format!("arrow {}", g.name), "missing"),
            Some(f) => {
                c.stats.checked += 1;
                match (ev.ob(&g.src), ev.ob(&g.dst)) {
                    (Ok(s), Ok(d)) if f.dom() == &s && f.cod() == &d => {}
                    _ => c.fail(Axiom::Table, format!("arrow {}", g.name), "wrong domain or codomain"),
                }
            }
        }
        match m.arrow_cells.get(&g.name) {
            None => c.fail(Axiom::Table, format!("identity cell on {}", g.name), "missing"),
            Some(cell) => {
                let f = ArrWord::Gen(g.name.clone());
                check_frame(
                    c,
                    &format!("identity cell on {}", g.name),
                    cell,
                    ev.pro(&ProWord::Id(g.src.clone())),
                    ev.pro(&ProWord::Id(g.dst.clone())),
                    ev.arr(&f),
                    ev.arr(&f),
                );
            }
        }
    }
    for g in &t.proarrows {
        c.stats.checked += 1;
        match m.proarrows.get(&g.name) {
            None => c.fail(Axiom::Table, format!("proarrow {}", g.name), "missing"),
            Some(s) => match (ev.ob(&g.src), ev.ob(&g.dst)) {
                (Ok(x), Ok(y)) if s.left_foot() == &x && s.right_foot() == &y => {}
                _ => c.fail(Axiom::Table, format!("proarrow {}", g.name), "feet differ from the generator's ends"),
            },
        }
    }
    if c.has(Axiom::Table) {
        return;
    }
    for g in &t.cells {
        match m.cells.get(&g.name) {
            None => c.fail(Axiom::Table, format!("cell {}", g.name), "missing"),
            Some(cell) => check_frame(c, &format!("cell {}", g.name), cell, ev.pro(&g.top), ev.pro(&g.bottom), ev.arr(&g.left), ev.arr(&g.right)),
        }
    }
    let atoms = atoms(t);
    for (p, _, y) in &atoms {
        for (q, y2, _) in &atoms {
            if y != y2 {
                continue;
            }
            let what = format!("laxator ({p:?}, {q:?})");
            match ev.laxator(p, q) {
                Err(e) => c.fail(Axiom::Table, what, e.to_string()),
                Ok(cell) => {
                    let composite = ev.pro(&p.clone().then(q.clone()));
                    let top = match (ev.pro(p), ev.pro(q)) {
                        (Ok(a), Ok(b)) => a.compose(&b).map_err(|e| TheoryError::from(crate::dblcat::DblError::from(e))),
                        (Err(e), _) | (_, Err(e)) => Err(e),
                    };
                    let l = top.as_ref().map(|s| FinFunction::identity(s.left_foot())).map_err(Clone::clone);
                    let r = top.as_ref().map(|s| FinFunction::identity(s.right_foot())).map_err(Clone::clone);
                    check_frame(c, &what, &cell, top, composite, l, r);
                }
            }
        }
    }
}

fn composable(a: &(ProWord, ObWord, ObWord), b: &(ProWord, ObWord, ObWord)) -> bool {
    a.2 == b.1
}

fn check_lax_functor(ev: &Evaluator<'_>, t: &TheoryPresentation, c: &mut Collector) {
    let atoms = atoms(t);
    for a in &atoms {
        for b in atoms.iter().filter(|b| composable(a, b)) {
            for d in atoms.iter().filter(|d| composable(b, d)) {
                let (m, n, p) = (&a.0, &b.0, &d.0);
                let instance = format!("({m:?}, {n:?}, {p:?})");
                let lhs = (|| -> TheoryResult<SpanMorphism> {
                    let mn = t.normalize_pro(&m.clone().then(n.clone()))?;
                    let head = ev.laxator(m, n)?.beside(&SpanMorphism::identity(&ev.pro(p)?))?;
                    Ok(head.then(&ev.laxator(&mn, p)?)?)
                })();
                let rhs = (|| -> TheoryResult<SpanMorphism> {
                    let np = t.normalize_pro(&n.clone().then(p.clone()))?;
                    let alpha = Span.associator(&ev.pro(m)?, &ev.pro(n)?, &ev.pro(p)?)?;
                    let mid = SpanMorphism::identity(&ev.pro(m)?).beside(&ev.laxator(n, p)?)?;
                    Ok(alpha.then(&mid)?.then(&ev.laxator(m, &np)?)?)
                })();
                c.compare(Axiom::Associativity, instance, lhs, rhs);
            }
        }
    }
    for (m, x, y) in &atoms {
        let left = (|| -> TheoryResult<(SpanMorphism, SpanMorphism)> {
            let id = ProWord::Id(x.clone());
            let lhs = ev.unitor(x)?.beside(&SpanMorphism::identity(&ev.pro(m)?))?.then(&ev.laxator(&id, m)?)?;
            Ok((lhs, Span.left_unitor(&ev.pro(m)?)?))
        })();
        let right = (|| -> TheoryResult<(SpanMorphism, SpanMorphism)> {
            let id = ProWord::Id(y.clone());
            let lhs = SpanMorphism::identity(&ev.pro(m)?).beside(&ev.unitor(y)?)?.then(&ev.laxator(m, &id)?)?;
            Ok((lhs, Span.right_unitor(&ev.pro(m)?)?))
        })();
        for (side, r) in [("left", left), ("right", right)] {
            let instance = format!("{side} unit at {m:?}");
            match r {
                Ok((l, r)) => c.compare(Axiom::Unit, instance, Ok(l), Ok(r)),
                Err(e) => c.fail(Axiom::Unit, instance, e.to_string()),
            }
        }
    }
}

fn check_preservation(ev: &Evaluator<'_>, words: &[ProWord], c: &mut Collector) {
    for w in words {
        let ProWord::Prod(p) = w else { continue };
        c.stats.checked += 1;
        match ev.product(p) {
            Ok(e) if e.phi.is_iso() => {}
            Ok(e) => c.fail(
                Axiom::ProductPreservation,
                format!("{w:?}"),
                format!("comparison is not invertible: apex {} -> {}", e.phi.src().apex().len(), e.phi.dst().apex().len()),
            ),
            Err(e) => c.fail(Axiom::ProductPreservation, format!("{w:?}"), e.to_string()),
        }
    }
}

fn check_naturality(ev: &Evaluator<'_>, t: &TheoryPresentation, c: &mut Collector) {
    for g in &t.cells {
        let frame = match t.cell_frame(&CellWord::Gen(g.name.clone())) {
            Ok(f) => f,
            Err(e) => {
                c.fail(Axiom::LaxatorNaturality, g.name.clone(), e.to_string());
                continue;
            }
        };
        let gamma = CellWord::Gen(g.name.clone());
        let ends = |p: &ProWord| t.pro_frame(p);
        let left = (|| -> TheoryResult<(SpanMorphism, SpanMorphism)> {
            let (xt, _) = ends(&frame.top)?;
            let (xb, _) = ends(&frame.bottom)?;
            let (it, ib) = (ProWord::Id(xt), ProWord::Id(xb));
            let mg = ev.cell(&gamma)?;
            let lhs = ev.cell(&CellWord::IdArr(frame.left.clone()))?.beside(&mg)?.then(&ev.laxator(&ib, &frame.bottom)?)?;
            let rhs = ev.laxator(&it, &frame.top)?.then(&mg)?;
            Ok((lhs, rhs))
        })();
        let right = (|| -> TheoryResult<(SpanMorphism, SpanMorphism)> {
            let (_, yt) = ends(&frame.top)?;
            let (_, yb) = ends(&frame.bottom)?;
            let (it, ib) = (ProWord::Id(yt), ProWord::Id(yb));
            let mg = ev.cell(&gamma)?;
            let lhs = mg.beside(&ev.cell(&CellWord::IdArr(frame.right.clone()))?)?.then(&ev.laxator(&frame.bottom, &ib)?)?;
            let rhs = ev.laxator(&frame.top, &it)?.then(&mg)?;
            Ok((lhs, rhs))
        })();
        for (side, r) in [("left", left), ("right", right)] {
            let instance = format!("{side} whiskering of {}", g.name);
            match r {
                Ok((l, r)) => c.compare(Axiom::LaxatorNaturality, instance, Ok(l), Ok(r)),
                Err(e) => c.fail(Axiom::LaxatorNaturality, instance, e.to_string()),
            }
        }
    }
}

/// Evaluates both sides of every equation.
fn check_equations(ev: &Evaluator<'_>, t: &TheoryPresentation, c: &mut Collector) {
    for e in &t.equations {
        c.stats.checked += 1;
        match (ev.cell(&e.lhs), ev.cell(&e.rhs)) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => c.violations.push(Violation {
                axiom: Axiom::Equation,
                instance: e.name.clone(),
                detail: None,
                words: Some((e.lhs.clone(), e.rhs.clone())),
                cells: Some((l, r)),
            }),
            (Err(err), _) | (_, Err(err)) => c.violations.push(Violation {
                axiom: Axiom::Equation,
                instance: e.name.clone(),
                detail: Some(err.to_string()),
                words: Some((e.lhs.clone(), e.rhs.clone())),
                cells: None,
            }),
        }
    }
}

/// A laxator at a pair of words computed by both routes.
#[derive(Debug, Clone)]
pub struct LaxatorAtProducts {
    pub left: ProWord,
    pub right: ProWord,
    pub derived: TheoryResult<SpanMorphism>,
    pub recomputed: TheoryResult<SpanMorphism>,
}

fn member_count(p: &ProWord) -> usize {
    p.as_prod().map_or(1, |w| w.members.len())
}

/// Laxators at every composable pair of presentation words with at least
/// one product and at most `bound` members on each side, by the product
/// formula and through the projections.
pub fn laxators_at_product_words(model: &ModelData, bound: usize) -> (Vec<LaxatorAtProducts>, usize) {
    let t = &model.theory;
    let ev = model.evaluator();
    let mut words: Vec<ProWord> = atoms(t).into_iter().map(|a| a.0).collect();
    words.extend(product_words(t));
    let mut out = Vec::new();
    let mut skipped = 0;
    for p in &words {
        for q in &words {
            if p.as_prod().is_none() && q.as_prod().is_none() {
                continue;
            }
            match (t.pro_frame(p), t.pro_frame(q)) {
                (Ok((_, y)), Ok((y2, _))) if y == y2 => {}
                _ => continue,
            }
            if member_count(p) > bound || member_count(q) > bound {
                skipped += 1;
                continue;
            }
            out.push(LaxatorAtProducts {
                left: p.clone(),
                right: q.clone(),
                derived: ev.laxator(p, q),
                recomputed: ev.recomputed_laxator(p, q),
            });
        }
    }
    (out, skipped)
}

fn check_lemma(model: &ModelData, words: &[ProWord], bound: usize, c: &mut Collector) {
    let (pairs, skipped) = laxators_at_product_words(model, bound);
    c.skip(skipped);
    for l in pairs {
        c.compare(Axiom::LaxatorProduct, format!("({:?}, {:?})", l.left, l.right), l.derived, l.recomputed);
    }
    let ev = model.evaluator();
    for x in product_objects(words) {
        c.compare(Axiom::UnitorProduct, format!("{x:?}"), ev.unitor(&x), ev.recomputed_unitor(&x));
    }
}

/// Checks the model against the lax functor axioms on generator-level
/// composables, product preservation at the presentation's product words,
/// the theory's equations, and the agreement of laxators and unitors at
/// products with their characterization through projections. `bound`
/// limits the number of members of words in the last check.
pub fn check_model(model: &ModelData, bound: usize) -> CheckReport {
    let mut c = Collector::default();
    let t = &model.theory;
    if let Err(e) = t.validate() {
        c.fail(Axiom::Table, "theory", e.to_string());
        return c.finish();
    }
    check_tables(model, &mut c);
    if c.has(Axiom::Table) {
        return c.finish();
    }
    let ev = model.evaluator();
    check_lax_functor(&ev, t, &mut c);
    let words = product_words(t);
    check_preservation(&ev, &words, &mut c);
    if c.has(Axiom::ProductPreservation) {
        c.skip(t.cells.len() + t.equations.len());
        return c.finish();
    }
    check_naturality(&ev, t, &mut c);
    check_equations(&ev, t, &mut c);
    check_lemma(model, &words, bound, &mut c);
    c.finish()
}

/// Re-evaluates the words stored in an equation violation.
pub fn replay(model: &ModelData, v: &Violation) -> Option<TheoryResult<(SpanMorphism, SpanMorphism)>> {
    let (l, r) = v.words.as_ref()?;
    let ev = model.evaluator();
    Some(ev.cell(l).and_then(|l| Ok((l, ev.cell(r)?))))
}
