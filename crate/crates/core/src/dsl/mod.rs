//! Text format for sets, spans, families, theories, models, transformations
//! and check reports.
//!
//! A document is a JSON object `{"version": "1", "entries": {...}}` whose
//! entries are tagged by `kind`. Printing is canonical: entries sorted by
//! name, keys in a fixed order, two-space indentation, LF newlines and a
//! trailing newline, so `print(parse(print(d))) == print(d)` byte for byte.

mod schema;
mod syntax;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use schema::*;

use crate::family::{DblFam, FamObject, FamProarrow};
use crate::finset::{FinFunction, FinSet, SetSpan, SpanMorphism};
use crate::dblcat::Span;
use crate::theory::{
    CheckReport, CompositeEntry, LaxatorEntry, ModelData, ObjectOverride, ProarrowComponent, ProductOverride, TheoryPresentation,
    TransformationData,
};
use crate::universal::UniversalCheckReport;

pub const VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{line}:{column}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("entry `{entry}`: reference `{name}` does not name a {expected} entry")]
    Reference { entry: String, name: String, expected: String },
    #[error("entry `{entry}`, field `{field}`: {message}")]
    Schema { entry: String, field: String, message: String },
}

pub type DslResult<T> = Result<T, DslError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub version: String,
    pub entries: BTreeMap<String, Entry>,
}

impl Default for Document {
    fn default() -> Self {
        Document {
            version: VERSION.into(),
            entries: BTreeMap::new(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: String,
    entries: serde_json::Map<String, Value>,
}

#[derive(Serialize)]
struct PrintedDocument<'a> {
    version: &'a str,
    entries: &'a BTreeMap<String, Entry>,
}

const DOCUMENT: &str = "(document)";

fn schema(entry: &str, field: impl Into<String>, message: impl fmt::Display) -> DslError {
    DslError::Schema {
        entry: entry.into(),
        field: field.into(),
        message: message.to_string(),
    }
}

/// Parses a document and checks that every entry and reference resolves.
pub fn parse_document(text: &str) -> DslResult<Document> {
    let value = syntax::parse(text)?;
    let raw: RawDocument = serde_path_to_error::deserialize(value).map_err(|e| {
        let field = e.path().to_string();
        schema(DOCUMENT, field, e.into_inner())
    })?;
    if raw.version != VERSION {
        return Err(schema(DOCUMENT, "version", format!("unsupported version {:?}", raw.version)));
    }
    let mut entries = BTreeMap::new();
    for (name, v) in raw.entries {
        let mut entry: Entry = serde_path_to_error::deserialize(v).map_err(|e| {
            let field = e.path().to_string();
            schema(&name, field, e.into_inner())
        })?;
        if let Entry::Report(r) = &mut entry {
            r.failures.sort();
        }
        entries.insert(name, entry);
    }
    let doc = Document { version: raw.version, entries };
    doc.validate()?;
    Ok(doc)
}

/// Canonical text of a document.
pub fn print_document(doc: &Document) -> String {
    let mut entries = doc.entries.clone();
    for e in entries.values_mut() {
        if let Entry::Report(r) = e {
            r.failures.sort();
        }
    }
    let value = serde_json::to_value(PrintedDocument {
        version: &doc.version,
        entries: &entries,
    })
    .expect("documents serialize");
    syntax::print(&value)
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&print_document(self))
    }
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, entry: Entry) -> &mut Self {
        self.entries.insert(name.into(), entry);
        self
    }

    pub fn with(mut self, name: impl Into<String>, entry: Entry) -> Self {
        self.insert(name, entry);
        self
    }

    /// Resolves every entry.
    pub fn validate(&self) -> DslResult<()> {
        for (name, e) in &self.entries {
            let r = Resolver { doc: self, entry: name };
            match e {
                Entry::Finset(b) => r.set_elements(&b.elements, "elements").map(drop)?,
                Entry::Function(b) => r.function_body(b, "").map(drop)?,
                Entry::Span(b) => r.span_body(b, "").map(drop)?,
                Entry::FamilyObject(b) => r.family_object_body(b, "").map(drop)?,
                Entry::FamilyProarrow(b) => r.family_proarrow_body(b, "").map(drop)?,
                Entry::Theory(t) => r.theory_body(t, "").map(drop)?,
                Entry::Model(b) => r.model_body(b, "").map(drop)?,
                Entry::Transformation(b) => r.transformation_body(b, "").map(drop)?,
                Entry::Report(b) => r.report_body(b)?,
            }
        }
        Ok(())
    }

    /// Names of the entries of one kind, in order.
    pub fn names_of(&self, kind: &str) -> Vec<&str> {
        self.entries.iter().filter(|(_, e)| e.kind() == kind).map(|(n, _)| n.as_str()).collect()
    }

    fn lookup(&self, from: &str, name: &str, kind: &str) -> DslResult<&Entry> {
        match self.entries.get(name) {
            Some(e) if e.kind() == kind => Ok(e),
            _ => Err(DslError::Reference {
                entry: from.into(),
                name: name.into(),
                expected: kind.into(),
            }),
        }
    }

    pub fn finset(&self, name: &str) -> DslResult<FinSet> {
        Resolver { doc: self, entry: DOCUMENT }.set(&Ref::Name(name.into()), "")
    }

    pub fn function(&self, name: &str) -> DslResult<FinFunction> {
        Resolver { doc: self, entry: DOCUMENT }.function(&Ref::Name(name.into()), "")
    }

    pub fn span(&self, name: &str) -> DslResult<SetSpan> {
        Resolver { doc: self, entry: DOCUMENT }.span(&Ref::Name(name.into()), "")
    }

    pub fn family_object(&self, name: &str) -> DslResult<FamObject<Span>> {
        Resolver { doc: self, entry: DOCUMENT }.family_object(&Ref::Name(name.into()), "")
    }

    pub fn family_proarrow(&self, name: &str) -> DslResult<FamProarrow<Span>> {
        let e = self.lookup(DOCUMENT, name, "family-proarrow")?;
        let Entry::FamilyProarrow(b) = e else { unreachable!("kind checked") };
        Resolver { doc: self, entry: name }.family_proarrow_body(b, "")
    }

    pub fn theory(&self, name: &str) -> DslResult<TheoryPresentation> {
        Resolver { doc: self, entry: DOCUMENT }.theory(&Ref::Name(name.into()), "")
    }

    pub fn model(&self, name: &str) -> DslResult<ModelData> {
        Resolver { doc: self, entry: DOCUMENT }.model(&Ref::Name(name.into()), "")
    }

    pub fn transformation(&self, name: &str) -> DslResult<TransformationData> {
        let e = self.lookup(DOCUMENT, name, "transformation")?;
        let Entry::Transformation(b) = e else { unreachable!("kind checked") };
        Resolver { doc: self, entry: name }.transformation_body(b, "")
    }

    pub fn report(&self, name: &str) -> DslResult<Report> {
        match self.lookup(DOCUMENT, name, "report")? {
            Entry::Report(r) => Ok(r.clone()),
            _ => unreachable!("kind checked"),
        }
    }
}

fn join(field: &str, part: impl fmt::Display) -> String {
    if field.is_empty() {
        part.to_string()
    } else {
        format!("{field}.{part}")
    }
}

struct Resolver<'a> {
    doc: &'a Document,
    entry: &'a str,
}

impl<'a> Resolver<'a> {
    fn at(&self, name: &'a str) -> Resolver<'a> {
        Resolver { doc: self.doc, entry: name }
    }

    fn err(&self, field: &str, message: impl fmt::Display) -> DslError {
        schema(self.entry, field, message)
    }

    /// Follows a named reference, resolving the target in its own context.
    fn follow<T>(&self, name: &'a str, kind: &str, f: impl FnOnce(&Resolver<'a>, &'a Entry) -> DslResult<T>) -> DslResult<T> {
        let e = self.doc.lookup(self.entry, name, kind)?;
        f(&self.at(name), e)
    }

    fn set_elements(&self, labels: &[String], field: &str) -> DslResult<FinSet> {
        FinSet::new(labels.iter().map(String::as_str)).map_err(|e| self.err(field, e))
    }

    fn set(&self, r: &'a SetRef, field: &str) -> DslResult<FinSet> {
        match r {
            Ref::Inline(labels) => self.set_elements(labels, field),
            Ref::Name(n) => self.follow(n, "finset", |r, e| match e {
                Entry::Finset(b) => r.set_elements(&b.elements, "elements"),
                _ => unreachable!("kind checked"),
            }),
        }
    }

    fn table(&self, dom: &FinSet, cod: &FinSet, images: &[String], field: &str) -> DslResult<FinFunction> {
        if images.len() != dom.len() {
            return Err(self.err(field, format!("{} images for a domain of {} elements", images.len(), dom.len())));
        }
        let table = images
            .iter()
            .enumerate()
            .map(|(k, l)| cod.index_of(l).ok_or_else(|| self.err(&format!("{field}[{k}]"), format!("`{l}` is not in the codomain"))))
            .collect::<DslResult<Vec<_>>>()?;
        FinFunction::new(dom.clone(), cod.clone(), table).map_err(|e| self.err(field, e))
    }

    fn function_body(&self, b: &'a FunctionBody, field: &str) -> DslResult<FinFunction> {
        let dom = self.set(&b.dom, &join(field, "dom"))?;
        let cod = self.set(&b.cod, &join(field, "cod"))?;
        self.table(&dom, &cod, &b.map, &join(field, "map"))
    }

    fn function(&self, r: &'a FunctionRef, field: &str) -> DslResult<FinFunction> {
        match r {
            Ref::Inline(b) => self.function_body(b, field),
            Ref::Name(n) => self.follow(n, "function", |r, e| match e {
                Entry::Function(b) => r.function_body(b, ""),
                _ => unreachable!("kind checked"),
            }),
        }
    }

    fn span_body(&self, b: &'a SpanBody, field: &str) -> DslResult<SetSpan> {
        let left = self.function(&b.left, &join(field, "left"))?;
        let right = self.function(&b.right, &join(field, "right"))?;
        SetSpan::new(left, right).map_err(|e| self.err(field, e))
    }

    fn span(&self, r: &'a SpanRef, field: &str) -> DslResult<SetSpan> {
        match r {
            Ref::Inline(b) => self.span_body(b, field),
            Ref::Name(n) => self.follow(n, "span", |r, e| match e {
                Entry::Span(b) => r.span_body(b, ""),
                _ => unreachable!("kind checked"),
            }),
        }
    }

    fn cell(&self, b: &'a CellBody, field: &str) -> DslResult<SpanMorphism> {
        let src = self.span(&b.src, &join(field, "src"))?;
        let dst = self.span(&b.dst, &join(field, "dst"))?;
        let left = self.table(src.left_foot(), dst.left_foot(), &b.left, &join(field, "left"))?;
        let apex = self.table(src.apex(), dst.apex(), &b.apex, &join(field, "apex"))?;
        let right = self.table(src.right_foot(), dst.right_foot(), &b.right, &join(field, "right"))?;
        SpanMorphism::new(src, dst, left, apex, right).map_err(|e| self.err(field, e))
    }

    fn family_object_body(&self, b: &'a FamilyObjectBody, field: &str) -> DslResult<FamObject<Span>> {
        let indexing = self.set(&b.indexing, &join(field, "indexing"))?;
        let assignment = b
            .assignment
            .iter()
            .enumerate()
            .map(|(k, s)| self.set(s, &join(field, format!("assignment[{k}]"))))
            .collect::<DslResult<Vec<_>>>()?;
        FamObject::new(indexing, assignment).map_err(|e| self.err(&join(field, "assignment"), e))
    }

    fn family_object(&self, r: &'a FamilyObjectRef, field: &str) -> DslResult<FamObject<Span>> {
        match r {
            Ref::Inline(b) => self.family_object_body(b, field),
            Ref::Name(n) => self.follow(n, "family-object", |r, e| match e {
                Entry::FamilyObject(b) => r.family_object_body(b, ""),
                _ => unreachable!("kind checked"),
            }),
        }
    }

    fn family_proarrow_body(&self, b: &'a FamilyProarrowBody, field: &str) -> DslResult<FamProarrow<Span>> {
        let src = self.family_object(&b.src, &join(field, "src"))?;
        let dst = self.family_object(&b.dst, &join(field, "dst"))?;
        let indexing = self.span(&b.indexing, &join(field, "indexing"))?;
        let components = b
            .components
            .iter()
            .enumerate()
            .map(|(k, s)| self.span(s, &join(field, format!("components[{k}]"))))
            .collect::<DslResult<Vec<_>>>()?;
        DblFam::covariant(Span).proarrow(src, dst, indexing, components).map_err(|e| self.err(field, e))
    }

    fn theory_body(&self, t: &TheoryPresentation, field: &str) -> DslResult<TheoryPresentation> {
        t.validate().map_err(|e| self.err(field, e))?;
        Ok(t.clone())
    }

    fn theory(&self, r: &'a TheoryRef, field: &str) -> DslResult<TheoryPresentation> {
        match r {
            Ref::Inline(t) => self.theory_body(t, field),
            Ref::Name(n) => self.follow(n, "theory", |r, e| match e {
                Entry::Theory(t) => r.theory_body(t, ""),
                _ => unreachable!("kind checked"),
            }),
        }
    }

    fn model_body(&self, b: &'a ModelBody, field: &str) -> DslResult<ModelData> {
        let mut m = ModelData::new(self.theory(&b.theory, &join(field, "theory"))?);
        for (x, s) in &b.objects {
            m.objects.insert(x.clone(), self.set(s, &join(field, format!("objects.{x}")))?);
        }
        for (f, r) in &b.arrows {
            m.arrows.insert(f.clone(), self.function(r, &join(field, format!("arrows.{f}")))?);
        }
        for (x, s) in &b.identities {
            m.identities.insert(x.clone(), self.span(s, &join(field, format!("identities.{x}")))?);
        }
        for (p, s) in &b.proarrows {
            m.proarrows.insert(p.clone(), self.span(s, &join(field, format!("proarrows.{p}")))?);
        }
        for (k, c) in b.composites.iter().enumerate() {
            m.composites.push(CompositeEntry {
                word: c.word.clone(),
                span: self.span(&c.span, &join(field, format!("composites[{k}].span")))?,
            });
        }
        for (g, c) in &b.cells {
            m.cells.insert(g.clone(), self.cell(c, &join(field, format!("cells.{g}")))?);
        }
        for (g, c) in &b.arrow_cells {
            m.arrow_cells.insert(g.clone(), self.cell(c, &join(field, format!("arrow_cells.{g}")))?);
        }
        for (k, l) in b.laxators.iter().enumerate() {
            m.laxators.push(LaxatorEntry {
                left: l.left.clone(),
                right: l.right.clone(),
                cell: self.cell(&l.cell, &join(field, format!("laxators[{k}].cell")))?,
            });
        }
        for (x, c) in &b.unitors {
            m.unitors.insert(x.clone(), self.cell(c, &join(field, format!("unitors.{x}")))?);
        }
        for (k, p) in b.products.iter().enumerate() {
            let at = join(field, format!("products[{k}]"));
            m.products.push(ProductOverride {
                word: p.word.clone(),
                span: self.span(&p.span, &join(&at, "span"))?,
                projections: p
                    .projections
                    .iter()
                    .enumerate()
                    .map(|(i, c)| self.cell(c, &join(&at, format!("projections[{i}]"))))
                    .collect::<DslResult<Vec<_>>>()?,
            });
        }
        Ok(m)
    }

    fn model(&self, r: &'a ModelRef, field: &str) -> DslResult<ModelData> {
        match r {
            Ref::Inline(b) => self.model_body(b, field),
            Ref::Name(n) => self.follow(n, "model", |r, e| match e {
                Entry::Model(b) => r.model_body(b, ""),
                _ => unreachable!("kind checked"),
            }),
        }
    }

    fn transformation_body(&self, b: &'a TransformationBody, field: &str) -> DslResult<TransformationData> {
        let source = self.model(&b.source, &join(field, "source"))?;
        let target = self.model(&b.target, &join(field, "target"))?;
        let objects = b
            .objects
            .iter()
            .map(|(x, f)| Ok((x.clone(), self.function(f, &join(field, format!("objects.{x}")))?)))
            .collect::<DslResult<BTreeMap<_, _>>>()?;
        let proarrows = b
            .proarrows
            .iter()
            .enumerate()
            .map(|(k, c)| {
                Ok(ProarrowComponent {
                    word: c.word.clone(),
                    cell: self.cell(&c.cell, &join(field, format!("proarrows[{k}].cell")))?,
                })
            })
            .collect::<DslResult<Vec<_>>>()?;
        let arrows = b
            .arrows
            .iter()
            .map(|(g, c)| Ok((g.clone(), self.cell(c, &join(field, format!("arrows.{g}")))?)))
            .collect::<DslResult<BTreeMap<_, _>>>()?;
        let products = b
            .products
            .iter()
            .enumerate()
            .map(|(k, o)| {
                Ok(ObjectOverride {
                    word: o.word.clone(),
                    function: self.function(&o.function, &join(field, format!("products[{k}].function")))?,
                })
            })
            .collect::<DslResult<Vec<_>>>()?;
        Ok(TransformationData {
            source,
            target,
            objects,
            proarrows,
            arrows,
            products,
        })
    }

    fn report_body(&self, r: &Report) -> DslResult<()> {
        if r.passed() != r.failures.is_empty() {
            return Err(self.err("verdict", "the verdict is `fail` exactly when failures are listed"));
        }
        Ok(())
    }
}

fn labels(s: &FinSet) -> Vec<String> {
    s.elements().iter().map(|l| l.to_string()).collect()
}

fn images(f: &FinFunction) -> Vec<String> {
    (0..f.dom().len()).map(|k| f.cod().label(f.apply(k)).to_string()).collect()
}

impl FunctionBody {
    pub fn of(f: &FinFunction) -> Self {
        FunctionBody {
            dom: Ref::Inline(labels(f.dom())),
            cod: Ref::Inline(labels(f.cod())),
            map: images(f),
        }
    }
}

impl SpanBody {
    pub fn of(s: &SetSpan) -> Self {
        SpanBody {
            left: Ref::Inline(FunctionBody::of(s.left())),
            right: Ref::Inline(FunctionBody::of(s.right())),
        }
    }
}

impl CellBody {
    pub fn of(c: &SpanMorphism) -> Self {
        CellBody {
            src: Ref::Inline(SpanBody::of(c.src())),
            dst: Ref::Inline(SpanBody::of(c.dst())),
            left: images(c.on_left()),
            apex: images(c.on_apex()),
            right: images(c.on_right()),
        }
    }
}

impl FamilyObjectBody {
    pub fn of(x: &FamObject<Span>) -> Self {
        FamilyObjectBody {
            indexing: Ref::Inline(labels(&x.indexing)),
            assignment: x.assignment.iter().map(|s| Ref::Inline(labels(s))).collect(),
        }
    }
}

impl FamilyProarrowBody {
    pub fn of(m: &FamProarrow<Span>) -> Self {
        FamilyProarrowBody {
            src: Ref::Inline(FamilyObjectBody::of(&m.src)),
            dst: Ref::Inline(FamilyObjectBody::of(&m.dst)),
            indexing: Ref::Inline(SpanBody::of(&m.indexing)),
            components: m.components.iter().map(|s| Ref::Inline(SpanBody::of(s))).collect(),
        }
    }
}

impl ModelBody {
    /// The model with everything inline except the theory, given by `theory`.
    pub fn of(m: &ModelData, theory: TheoryRef) -> Self {
        ModelBody {
            theory,
            objects: m.objects.iter().map(|(x, s)| (x.clone(), Ref::Inline(labels(s)))).collect(),
            arrows: m.arrows.iter().map(|(f, g)| (f.clone(), Ref::Inline(FunctionBody::of(g)))).collect(),
            identities: m.identities.iter().map(|(x, s)| (x.clone(), Ref::Inline(SpanBody::of(s)))).collect(),
            proarrows: m.proarrows.iter().map(|(p, s)| (p.clone(), Ref::Inline(SpanBody::of(s)))).collect(),
            composites: m
                .composites
                .iter()
                .map(|c| CompositeBody {
                    word: c.word.clone(),
                    span: Ref::Inline(SpanBody::of(&c.span)),
                })
                .collect(),
            cells: m.cells.iter().map(|(g, c)| (g.clone(), CellBody::of(c))).collect(),
            arrow_cells: m.arrow_cells.iter().map(|(g, c)| (g.clone(), CellBody::of(c))).collect(),
            laxators: m
                .laxators
                .iter()
                .map(|l| LaxatorBody {
                    left: l.left.clone(),
                    right: l.right.clone(),
                    cell: CellBody::of(&l.cell),
                })
                .collect(),
            unitors: m.unitors.iter().map(|(x, c)| (x.clone(), CellBody::of(c))).collect(),
            products: m
                .products
                .iter()
                .map(|p| ProductBody {
                    word: p.word.clone(),
                    span: Ref::Inline(SpanBody::of(&p.span)),
                    projections: p.projections.iter().map(CellBody::of).collect(),
                })
                .collect(),
        }
    }
}

impl TransformationBody {
    pub fn of(t: &TransformationData, source: ModelRef, target: ModelRef) -> Self {
        TransformationBody {
            source,
            target,
            objects: t.objects.iter().map(|(x, f)| (x.clone(), Ref::Inline(FunctionBody::of(f)))).collect(),
            proarrows: t
                .proarrows
                .iter()
                .map(|c| ProarrowComponentBody {
                    word: c.word.clone(),
                    cell: CellBody::of(&c.cell),
                })
                .collect(),
            arrows: t.arrows.iter().map(|(g, c)| (g.clone(), CellBody::of(c))).collect(),
            products: t
                .products
                .iter()
                .map(|o| ObjectOverrideBody {
                    word: o.word.clone(),
                    function: Ref::Inline(FunctionBody::of(&o.function)),
                })
                .collect(),
        }
    }
}

impl Entry {
    pub fn finset(s: &FinSet) -> Self {
        Entry::Finset(FinSetBody { elements: labels(s) })
    }

    pub fn function(f: &FinFunction) -> Self {
        Entry::Function(FunctionBody::of(f))
    }

    pub fn span(s: &SetSpan) -> Self {
        Entry::Span(SpanBody::of(s))
    }

    pub fn family_object(x: &FamObject<Span>) -> Self {
        Entry::FamilyObject(FamilyObjectBody::of(x))
    }

    pub fn family_proarrow(m: &FamProarrow<Span>) -> Self {
        Entry::FamilyProarrow(FamilyProarrowBody::of(m))
    }

    pub fn theory(t: &TheoryPresentation) -> Self {
        Entry::Theory(t.clone())
    }

    /// A model whose theory is inline.
    pub fn model(m: &ModelData) -> Self {
        Entry::Model(Box::new(ModelBody::of(m, Ref::Inline(m.theory.clone()))))
    }

    /// A model whose theory is the entry `theory`.
    pub fn model_of(m: &ModelData, theory: &str) -> Self {
        Entry::Model(Box::new(ModelBody::of(m, Ref::Name(theory.into()))))
    }

    /// A transformation between the model entries `source` and `target`.
    pub fn transformation(t: &TransformationData, source: &str, target: &str) -> Self {
        Entry::Transformation(Box::new(TransformationBody::of(t, Ref::Name(source.into()), Ref::Name(target.into()))))
    }

    pub fn report(r: Report) -> Self {
        Entry::Report(r)
    }
}

impl From<&CheckReport> for Report {
    fn from(r: &CheckReport) -> Self {
        let failures = r
            .violations
            .iter()
            .map(|v| Failure {
                check: v.axiom.id().into(),
                instance: v.instance.clone(),
                detail: v.detail.clone(),
            })
            .collect();
        Report::new(r.stats.checked, failures)
    }
}

impl From<&UniversalCheckReport> for Report {
    fn from(r: &UniversalCheckReport) -> Self {
        let kind = serde_json::to_value(r.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let failures = r
            .failures
            .iter()
            .map(|c| Failure {
                check: kind.clone(),
                instance: c.datum.clone(),
                detail: Some(format!("{} factorizations{}", c.factorizations, if c.confirmed { "" } else { ", solver disagrees" })),
            })
            .collect();
        Report::new(r.cases_tried, failures)
    }
}
