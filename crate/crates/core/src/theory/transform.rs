//! Product-preserving lax transformations between models.

use std::collections::BTreeMap;

use super::check::{atoms, product_words, Axiom, CheckReport, Collector};
use super::model::ModelData;
use super::words::{normalize_ob, ArrWord, CellWord, ObWord, ProWord};
use super::{TheoryError, TheoryResult};
use crate::dblcat::{DoubleCategory, Span};
use crate::finset::{FinFunction, SetSpan, SpanMorphism};

/// The cell `α_m : F m => G m` at a generator-level proarrow word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProarrowComponent {
    pub word: ProWord,
    pub cell: SpanMorphism,
}

/// An explicit component at a product object, replacing the pairing of
/// the factor components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectOverride {
    pub word: ObWord,
    pub function: FinFunction,
}

/// A lax transformation `α : F => G` given on generators: functions
/// `α_x`, cells `α_m` on identities and proarrow generators, and
/// naturality comparisons `α_f : id_{Fx} => G(id_y)` for arrow generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationData {
    pub source: ModelData,
    pub target: ModelData,
    pub objects: BTreeMap<String, FinFunction>,
    pub proarrows: Vec<ProarrowComponent>,
    pub arrows: BTreeMap<String, SpanMorphism>,
    pub products: Vec<ObjectOverride>,
}

fn missing(what: String) -> TheoryError {
    TheoryError::MissingTableEntry(what)
}

impl TransformationData {
    /// The identity transformation on a model.
    pub fn identity(model: &ModelData) -> TheoryResult<Self> {
        let ev = model.evaluator();
        let objects = model.objects.iter().map(|(x, s)| (x.clone(), FinFunction::identity(s))).collect();
        let proarrows = atoms(&model.theory)
            .into_iter()
            .map(|(w, _, _)| Ok(ProarrowComponent { cell: SpanMorphism::identity(&ev.pro(&w)?), word: w }))
            .collect::<TheoryResult<Vec<_>>>()?;
        let arrows = model
            .theory
            .arrows
            .iter()
            .map(|g| {
                let f = ev.arr(&ArrWord::Gen(g.name.clone()))?;
                let cell = Span.id_cell_on_arrow(&f).then(&ev.unitor(&g.dst)?)?;
                Ok((g.name.clone(), cell))
            })
            .collect::<TheoryResult<BTreeMap<_, _>>>()?;
        Ok(TransformationData {
            source: model.clone(),
            target: model.clone(),
            objects,
            proarrows,
            arrows,
            products: Vec::new(),
        })
    }

    /// `α` followed by `β`, for theories without arrow generators.
    pub fn compose(&self, next: &TransformationData) -> TheoryResult<Self> {
        if self.target != next.source {
            return Err(TheoryError::IllTypedWord("transformations are not composable".into()));
        }
        if !self.source.theory.arrows.is_empty() {
            return Err(TheoryError::IllTypedWord("composition with arrow generators is not supported".into()));
        }
        let objects = self
            .objects
            .iter()
            .map(|(x, f)| {
                let g = next.objects.get(x).ok_or_else(|| missing(format!("component at `{x}`")))?;
                Ok((x.clone(), f.then(g)?))
            })
            .collect::<TheoryResult<BTreeMap<_, _>>>()?;
        let proarrows = self
            .proarrows
            .iter()
            .map(|c| {
                let d = next.pro_component_atom(&c.word)?;
                Ok(ProarrowComponent {
                    word: c.word.clone(),
                    cell: c.cell.then(&d)?,
                })
            })
            .collect::<TheoryResult<Vec<_>>>()?;
        Ok(TransformationData {
            source: self.source.clone(),
            target: next.target.clone(),
            objects,
            proarrows,
            arrows: BTreeMap::new(),
            products: Vec::new(),
        })
    }

    fn pro_component_atom(&self, w: &ProWord) -> TheoryResult<SpanMorphism> {
        let t = &self.source.theory;
        let w = t.normalize_pro(w)?;
        self.proarrows
            .iter()
            .find(|c| t.normalize_pro(&c.word).ok().as_ref() == Some(&w))
            .map(|c| c.cell.clone())
            .ok_or_else(|| missing(format!("component at {w:?}")))
    }

    /// `α_x`, paired from the factors at product objects unless overridden.
    pub fn ob_component(&self, x: &ObWord) -> TheoryResult<FinFunction> {
        let x = normalize_ob(x);
        if let Some(o) = self.products.iter().find(|o| normalize_ob(&o.word) == x) {
            return Ok(o.function.clone());
        }
        match &x {
            ObWord::Gen(n) => self.objects.get(n).cloned().ok_or_else(|| missing(format!("component at `{n}`"))),
            ObWord::Prod(xs) => {
                let (fe, ge) = (self.source.evaluator(), self.target.evaluator());
                let (dom, cod) = (fe.ob(&x)?, ge.ob(&x)?);
                let constraints = xs
                    .iter()
                    .enumerate()
                    .map(|(i, xi)| {
                        let p = ArrWord::Proj { factors: xs.clone(), index: i };
                        Ok((ge.arr(&p)?, fe.arr(&p)?.then(&self.ob_component(xi)?)?))
                    })
                    .collect::<TheoryResult<Vec<_>>>()?;
                let s = Span.solve_arrow_post(&dom, &cod, &constraints);
                let count = s.count;
                s.unique().ok_or_else(|| TheoryError::NotDetermined(format!("component at {x:?}: {count} solutions")))
            }
        }
    }

    /// `α_p` at a normalized proarrow word; at products, the unique cell
    /// whose composite with each projection of `G p` is `F π_a ; α_{m_a}`.
    pub fn pro_component(&self, p: &ProWord) -> TheoryResult<SpanMorphism> {
        let t = &self.source.theory;
        let p = t.normalize_pro(p)?;
        let ProWord::Prod(w) = &p else {
            return self.pro_component_atom(&p);
        };
        let (fe, ge) = (self.source.evaluator(), self.target.evaluator());
        let (fp, gp) = (fe.product(w)?, ge.product(w)?);
        let constraints = w
            .members
            .iter()
            .enumerate()
            .map(|(a, m)| Ok((gp.projections[a].clone(), fp.projections[a].then(&self.pro_component(m)?)?)))
            .collect::<TheoryResult<Vec<_>>>()?;
        let (l, r) = (self.ob_component(&ObWord::Prod(w.src.clone()))?, self.ob_component(&ObWord::Prod(w.dst.clone()))?);
        let s = Span.solve_post(&fp.span, &gp.span, &l, &r, &constraints);
        let count = s.count;
        s.unique().ok_or_else(|| TheoryError::NotDetermined(format!("component at {p:?}: {count} solutions")))
    }
}

fn has_arrow_generator(f: &ArrWord) -> bool {
    match f {
        ArrWord::Gen(_) => true,
        ArrWord::Then(a, b) => has_arrow_generator(a) || has_arrow_generator(b),
        ArrWord::Pair { components, .. } => components.iter().any(has_arrow_generator),
        ArrWord::Id(_) | ArrWord::Proj { .. } | ArrWord::Structure { .. } => false,
    }
}

fn frames(t: &TransformationData, c: &mut Collector) {
    let (fe, ge) = (t.source.evaluator(), t.target.evaluator());
    let th = &t.source.theory;
    for x in &th.objects {
        let w = ObWord::gen(x);
        match (t.objects.get(x), fe.ob(&w), ge.ob(&w)) {
            (Some(f), Ok(d), Ok(e)) if f.dom() == &d && f.cod() == &e => {}
            (None, ..) => c.fail(Axiom::Table, format!("component at {x}"), "missing"),
            _ => c.fail(Axiom::Table, format!("component at {x}"), "wrong domain or codomain"),
        }
    }
    for (w, s, d) in atoms(th) {
        let what = format!("component at {w:?}");
        let check = (|| -> TheoryResult<bool> {
            let cell = t.pro_component_atom(&w)?;
            Ok(cell.src() == &fe.pro(&w)? && cell.dst() == &ge.pro(&w)? && cell.on_left() == &t.ob_component(&s)? && cell.on_right() == &t.ob_component(&d)?)
        })();
        match check {
            Ok(true) => {}
            Ok(false) => c.fail(Axiom::Table, what, "frame mismatch"),
            Err(e) => c.fail(Axiom::Table, what, e.to_string()),
        }
    }
    for g in &th.arrows {
        let what = format!("naturality comparison at {}", g.name);
        let f = ArrWord::Gen(g.name.clone());
        let check = (|| -> TheoryResult<bool> {
            let cell = t.arrows.get(&g.name).ok_or_else(|| missing(what.clone()))?;
            let top = SetSpan::identity(&fe.ob(&g.src)?);
            let left = t.ob_component(&g.src)?.then(&ge.arr(&f)?)?;
            let right = fe.arr(&f)?.then(&t.ob_component(&g.dst)?)?;
            Ok(cell.src() == &top && cell.dst() == &ge.pro(&ProWord::Id(g.dst.clone()))? && cell.on_left() == &left && cell.on_right() == &right)
        })();
        match check {
            Ok(true) => {}
            Ok(false) => c.fail(Axiom::Table, what, "frame mismatch"),
            Err(e) => c.fail(Axiom::Table, what, e.to_string()),
        }
    }
}

/// Checks a transformation between two models: strict naturality squares
/// for projections, compatibility with laxators and unitors on generator
/// words, naturality against generator cells whose sides involve no arrow
/// generators, and the naturality comparisons at product objects.
pub fn check_transformation(t: &TransformationData) -> CheckReport {
    let mut c = Collector::default();
    if t.source.theory != t.target.theory {
        c.fail(Axiom::Table, "theory", "models of different theories");
        return c.finish();
    }
    frames(t, &mut c);
    if c.has(Axiom::Table) {
        return c.finish();
    }
    let th = &t.source.theory;
    let (fe, ge) = (t.source.evaluator(), t.target.evaluator());
    let words = product_words(th);

    let mut objects: Vec<ObWord> = Vec::new();
    for w in words.iter().filter_map(ProWord::as_prod) {
        for ends in [&w.src, &w.dst] {
            let x = normalize_ob(&ObWord::Prod(ends.clone()));
            if matches!(x, ObWord::Prod(_)) && !objects.contains(&x) {
                objects.push(x);
            }
        }
    }
    for o in &t.products {
        let x = normalize_ob(&o.word);
        if !objects.contains(&x) {
            objects.push(x);
        }
    }
    for x in &objects {
        let ObWord::Prod(xs) = x else { continue };
        for (i, xi) in xs.iter().enumerate() {
            let p = ArrWord::Proj { factors: xs.clone(), index: i };
            let side = |first: TheoryResult<FinFunction>, second: TheoryResult<FinFunction>| -> TheoryResult<SpanMorphism> { Ok(Span.id_cell_on_arrow(&first?.then(&second?)?)) };
            c.compare(
                Axiom::ProjectionSquare,
                format!("{x:?} at {i}"),
                side(t.ob_component(x), ge.arr(&p)),
                side(fe.arr(&p), t.ob_component(xi)),
            );
        }
    }

    for x in &th.objects {
        let w = ObWord::gen(x);
        let id = ProWord::Id(w.clone());
        let lhs = (|| Ok(fe.unitor(&w)?.then(&t.pro_component(&id)?)?))();
        let rhs = (|| Ok(Span.id_cell_on_arrow(&t.ob_component(&w)?).then(&ge.unitor(&w)?)?))();
        c.compare(Axiom::ComponentUnitor, x.clone(), lhs, rhs);
    }

    let atoms = atoms(th);
    for (m, _, y) in &atoms {
        for (n, y2, _) in &atoms {
            if y != y2 {
                continue;
            }
            let mn = m.clone().then(n.clone());
            let lhs = (|| Ok(fe.laxator(m, n)?.then(&t.pro_component(&mn)?)?))();
            let rhs = (|| Ok(t.pro_component(m)?.beside(&t.pro_component(n)?)?.then(&ge.laxator(m, n)?)?))();
            c.compare(Axiom::ComponentLaxator, format!("({m:?}, {n:?})"), lhs, rhs);
        }
    }

    for g in &th.cells {
        if has_arrow_generator(&g.left) || has_arrow_generator(&g.right) {
            c.skip(1);
            continue;
        }
        let gamma = CellWord::Gen(g.name.clone());
        let lhs = (|| Ok(fe.cell(&gamma)?.then(&t.pro_component(&g.bottom)?)?))();
        let rhs = (|| Ok(t.pro_component(&g.top)?.then(&ge.cell(&gamma)?)?))();
        c.compare(Axiom::ComponentNaturality, g.name.clone(), lhs, rhs);
    }

    for x in &objects {
        let ObWord::Prod(xs) = x else { continue };
        let lhs = (|| Ok(Span.id_cell_on_arrow(&t.ob_component(x)?).then(&ge.unitor(x)?)?))();
        let rhs = (|| -> TheoryResult<SpanMorphism> {
            let alpha = t.ob_component(x)?;
            let id = th.normalize_pro(&ProWord::Id(x.clone()))?;
            let target = ge.pro(&id)?;
            let projections = match &id {
                ProWord::Prod(w) => ge.product(w)?.projections,
                other => vec![SpanMorphism::identity(&ge.pro(other)?)],
            };
            let constraints = xs
                .iter()
                .enumerate()
                .map(|(i, xi)| {
                    let p = ge.arr(&ArrWord::Proj { factors: xs.clone(), index: i })?;
                    Ok((projections[i].clone(), Span.id_cell_on_arrow(&alpha.then(&p)?).then(&ge.unitor(xi)?)?))
                })
                .collect::<TheoryResult<Vec<_>>>()?;
            let s = Span.solve_post(&SetSpan::identity(&fe.ob(x)?), &target, &alpha, &alpha, &constraints);
            let count = s.count;
            s.unique().ok_or_else(|| TheoryError::NotDetermined(format!("{count} solutions")))
        })();
        c.compare(Axiom::NaturalityComparisonProduct, format!("{x:?}"), lhs, rhs);
    }
    c.finish()
}
