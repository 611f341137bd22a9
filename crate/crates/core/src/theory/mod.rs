//! Finite-product double theories presented by generators and equations,
//! their models in Span as product-preserving lax functors, and lax
//! transformations between models.

pub mod check;
pub mod cmon;
pub mod model;
pub mod presentation;
pub mod transform;
pub mod words;

pub use check::{check_model, laxators_at_product_words, product_words, replay, Axiom, CheckReport, CheckStats, LaxatorAtProducts, Verdict, Violation};
pub use cmon::{cmon_category_to_model, enumerate_cmon_categories, model_to_cmon_category, CMonCategory, CMonError};
pub use model::{CompositeEntry, EvaluatedProduct, Evaluator, LaxatorEntry, ModelData, ProductOverride};
pub use presentation::{builtin_lc_mon_theory, ArrowGenerator, CellGenerator, Equation, ProarrowGenerator, TheoryPresentation};
pub use transform::{check_transformation, ObjectOverride, ProarrowComponent, TransformationData};
pub use words::{ArrWord, CellWord, Frame, ObWord, ProWord, ProdWord};

use crate::dblcat::DblError;
use crate::finset::{FinFunction, FinSet, FinSetError, SetSpan, SpanMorphism};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error("ill-typed word: {0}")]
    IllTypedWord(String),
    #[error("missing table entry: {0}")]
    MissingTableEntry(String),
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    /// A pairing or comparison has no unique solution.
    #[error("not uniquely determined: {0}")]
    NotDetermined(String),
    #[error(transparent)]
    Dbl(#[from] DblError),
}

impl From<FinSetError> for TheoryError {
    fn from(e: FinSetError) -> Self {
        TheoryError::Dbl(DblError::Set(e))
    }
}

pub type TheoryResult<T> = Result<T, TheoryError>;

/// The Boolean model of local commutative monoids: one object, identity
/// span with apex `{0, 1}`, composition AND with unit `1`, sum OR with
/// zero `0`.
pub fn boolean_model() -> ModelData {
    cmon_category_to_model(&CMonCategory::boolean()).expect("the Boolean semiring is a CMon-category")
}

/// The terminal model: every object and identity span is a singleton.
pub fn trivial_model() -> ModelData {
    let c = CMonCategory {
        objects: FinSet::singleton("•"),
        morphisms: FinSet::singleton("0"),
        src: vec![0],
        dst: vec![0],
        identity: vec![0],
        zero: vec![vec![0]],
        plus: [((0, 0), 0)].into_iter().collect(),
        compose: [((0, 0), 0)].into_iter().collect(),
    };
    cmon_category_to_model(&c).expect("the trivial CMon-category")
}

fn x() -> ObWord {
    ObWord::gen("x")
}

/// Replaces the apex map of a cell, keeping its frame.
fn with_apex(cell: &SpanMorphism, table: Vec<usize>) -> SpanMorphism {
    let apex = FinFunction::new(cell.on_apex().dom().clone(), cell.on_apex().cod().clone(), table).expect("table in range");
    SpanMorphism::new(cell.src().clone(), cell.dst().clone(), cell.on_left().clone(), apex, cell.on_right().clone()).expect("frame kept")
}

/// Apex value of a Boolean label.
fn bit(s: &SetSpan, e: usize) -> usize {
    s.apex().label(e).as_ref().parse::<usize>().unwrap_or(0)
}

/// Pinned broken variants of the Boolean model, each expected to violate
/// the named axiom first.
pub fn boolean_mutants() -> Vec<(Axiom, ModelData)> {
    let base = boolean_model();
    let id = ProWord::Id(x());
    let laxator = base.evaluator().laxator(&id, &id).expect("laxator");
    let mor = base.identities["x"].clone();
    let pairs: Vec<(usize, usize)> = crate::dblcat::pair_positions(&mor, &mor);
    let with_composition = |op: fn(usize, usize) -> usize| {
        let table = pairs.iter().map(|&(f, g)| op(bit(&mor, f), bit(&mor, g))).collect();
        with_apex(&laxator, table)
    };
    let unitor = |value: usize| {
        let u = &base.unitors["x"];
        with_apex(u, vec![value])
    };

    let mut associativity = base.clone();
    associativity.set_laxator(id.clone(), id.clone(), with_composition(|f, _| 1 - f));

    let mut unit = base.clone();
    unit.unitors.insert("x".into(), unitor(0));

    let mut naturality = base.clone();
    naturality.set_laxator(id.clone(), id.clone(), with_composition(|f, g| f | g));
    naturality.unitors.insert("x".into(), unitor(0));

    let mut preservation = base.clone();
    let top = ProWord::local_product(x(), x(), vec![]);
    let one = base.evaluator().pro(&top).expect("local terminal");
    let doubled = SetSpan::new(
        FinFunction::new(FinSet::range(2), one.left_foot().clone(), vec![0, 0]).expect("leg"),
        FinFunction::new(FinSet::range(2), one.right_foot().clone(), vec![0, 0]).expect("leg"),
    )
    .expect("span");
    preservation.products.push(ProductOverride {
        word: top,
        span: doubled.clone(),
        projections: vec![],
    });
    let eta = &base.cells["eta"];
    preservation.cells.insert(
        "eta".into(),
        SpanMorphism::new(doubled, eta.dst().clone(), eta.on_left().clone(), FinFunction::new(FinSet::range(2), eta.dst().apex().clone(), vec![0, 0]).expect("zero"), eta.on_right().clone()).expect("frame"),
    );

    let mut equation = base.clone();
    let mu = &base.cells["mu"];
    equation.cells.insert("mu".into(), with_apex(mu, vec![0; mu.on_apex().dom().len()]));

    vec![
        (Axiom::Associativity, associativity),
        (Axiom::Unit, unit),
        (Axiom::LaxatorNaturality, naturality),
        (Axiom::ProductPreservation, preservation),
        (Axiom::Equation, equation),
    ]
}
