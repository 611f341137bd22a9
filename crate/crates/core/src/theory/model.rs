//! Model data for a theory and evaluation of words in Span.

use std::collections::BTreeMap;

use super::words::{ArrWord, CellWord, ObWord, ProWord, ProdWord};
use super::{TheoryError, TheoryPresentation, TheoryResult};
use crate::dblcat::{pair_positions, DoubleCategory, Span};
use crate::family::{DblFam, FamObject, FamProarrow};
use crate::finset::{FinFunction, FinSet, SetSpan, SpanMorphism};
use crate::universal::{product_comparison, product_identity_comparison, span_product, HasProducts};

/// The laxator `F_{left,right} : M left ⊙ M right => M(left ⊙ right)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxatorEntry {
    pub left: ProWord,
    pub right: ProWord,
    pub cell: SpanMorphism,
}

/// The value of a composite of proarrow generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeEntry {
    pub word: ProWord,
    pub span: SetSpan,
}

/// An explicit value for a product word, replacing the chosen product of
/// its members, with one projection cell per member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductOverride {
    pub word: ProWord,
    pub span: SetSpan,
    pub projections: Vec<SpanMorphism>,
}

/// A candidate lax functor from a theory into Span, given on generators.
/// `identities[x]` is the span `M(id_x)`, `arrow_cells[f]` the cell
/// `M(1_f)`, and `unitors[x]` the cell `id_{Mx} => M(id_x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelData {
    pub theory: TheoryPresentation,
    pub objects: BTreeMap<String, FinSet>,
    pub arrows: BTreeMap<String, FinFunction>,
    pub identities: BTreeMap<String, SetSpan>,
    pub proarrows: BTreeMap<String, SetSpan>,
    pub composites: Vec<CompositeEntry>,
    pub cells: BTreeMap<String, SpanMorphism>,
    pub arrow_cells: BTreeMap<String, SpanMorphism>,
    pub laxators: Vec<LaxatorEntry>,
    pub unitors: BTreeMap<String, SpanMorphism>,
    pub products: Vec<ProductOverride>,
}

impl ModelData {
    pub fn new(theory: TheoryPresentation) -> Self {
        ModelData {
            theory,
            objects: BTreeMap::new(),
            arrows: BTreeMap::new(),
            identities: BTreeMap::new(),
            proarrows: BTreeMap::new(),
            composites: Vec::new(),
            cells: BTreeMap::new(),
            arrow_cells: BTreeMap::new(),
            laxators: Vec::new(),
            unitors: BTreeMap::new(),
            products: Vec::new(),
        }
    }

    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator { model: self }
    }

    /// Replaces or inserts the laxator at a pair of words.
    pub fn set_laxator(&mut self, left: ProWord, right: ProWord, cell: SpanMorphism) {
        self.laxators.retain(|e| !(e.left == left && e.right == right));
        self.laxators.push(LaxatorEntry { left, right, cell });
    }
}

fn missing(what: impl Into<String>) -> TheoryError {
    TheoryError::MissingTableEntry(what.into())
}

fn one<T>(s: crate::dblcat::Solutions<T>, what: &str) -> TheoryResult<T> {
    let count = s.count;
    s.unique().ok_or_else(|| TheoryError::NotDetermined(format!("{what}: {count} solutions")))
}

/// A product word evaluated in the model: its vertex span, projections and
/// the comparison `Φ : M(Πm) => Π M m` with the chosen product.
#[derive(Debug, Clone)]
pub struct EvaluatedProduct {
    pub family: FamProarrow<Span>,
    pub span: SetSpan,
    pub projections: Vec<SpanMorphism>,
    pub phi: SpanMorphism,
    pub overridden: bool,
}

/// Evaluates normalized words of the model's theory.
pub struct Evaluator<'a> {
    model: &'a ModelData,
}

impl<'a> Evaluator<'a> {
    fn theory(&self) -> &TheoryPresentation {
        &self.model.theory
    }

    pub fn ob(&self, x: &ObWord) -> TheoryResult<FinSet> {
        match x {
            ObWord::Gen(n) => self.model.objects.get(n).cloned().ok_or_else(|| missing(format!("object `{n}`"))),
            ObWord::Prod(xs) if xs.len() == 1 => self.ob(&xs[0]),
            ObWord::Prod(xs) => {
                let sets = xs.iter().map(|x| self.ob(x)).collect::<TheoryResult<Vec<_>>>()?;
                Ok(Span.product_object(&sets)?.0)
            }
        }
    }

    fn obs(&self, xs: &[ObWord]) -> TheoryResult<Vec<FinSet>> {
        xs.iter().map(|x| self.ob(x)).collect()
    }

    pub fn arr(&self, f: &ArrWord) -> TheoryResult<FinFunction> {
        let f = self.theory().normalize_arr(f)?;
        self.arr_normal(&f)
    }

    fn arr_normal(&self, f: &ArrWord) -> TheoryResult<FinFunction> {
        Ok(match f {
            ArrWord::Id(x) => FinFunction::identity(&self.ob(x)?),
            ArrWord::Gen(n) => self.model.arrows.get(n).cloned().ok_or_else(|| missing(format!("arrow `{n}`")))?,
            ArrWord::Then(a, b) => self.arr_normal(a)?.then(&self.arr_normal(b)?)?,
            ArrWord::Proj { factors, index } => Span.product_object(&self.obs(factors)?)?.1[*index].clone(),
            ArrWord::Pair { src, components } => {
                let dom = self.ob(src)?;
                let fns = components.iter().map(|c| self.arr_normal(c)).collect::<TheoryResult<Vec<_>>>()?;
                let cods: Vec<FinSet> = fns.iter().map(|f| f.cod().clone()).collect();
                let (cod, legs) = Span.product_object(&cods)?;
                let constraints: Vec<_> = legs.into_iter().zip(fns).collect();
                one(Span.solve_arrow_post(&dom, &cod, &constraints), "pairing")?
            }
            ArrWord::Structure { .. } => unreachable!("structure arrows are normalized to pairings"),
        })
    }

    pub fn pro(&self, p: &ProWord) -> TheoryResult<SetSpan> {
        let p = self.theory().normalize_pro(p)?;
        self.pro_normal(&p)
    }

    pub(crate) fn pro_normal(&self, p: &ProWord) -> TheoryResult<SetSpan> {
        match p {
            ProWord::Id(ObWord::Gen(x)) => self.model.identities.get(x).cloned().ok_or_else(|| missing(format!("identity on `{x}`"))),
            ProWord::Gen(n) => self.model.proarrows.get(n).cloned().ok_or_else(|| missing(format!("proarrow `{n}`"))),
            ProWord::Then(..) => self
                .model
                .composites
                .iter()
                .find(|e| self.theory().normalize_pro(&e.word).ok().as_ref() == Some(p))
                .map(|e| e.span.clone())
                .ok_or_else(|| missing(format!("composite {p:?}"))),
            ProWord::Prod(w) => Ok(self.product(w)?.span),
            other => Err(TheoryError::IllTypedWord(format!("not a normal proarrow word: {other:?}"))),
        }
    }

    /// The Span family of member values of a product word.
    pub fn family(&self, w: &ProdWord) -> TheoryResult<FamProarrow<Span>> {
        let object = |xs: &[ObWord]| -> TheoryResult<FamObject<Span>> { Ok(FamObject::new(FinSet::range(xs.len()), self.obs(xs)?)?) };
        let (src, dst) = (object(&w.src)?, object(&w.dst)?);
        let a = FinSet::range(w.members.len());
        let indexing = SetSpan::new(
            FinFunction::new(a.clone(), src.indexing.clone(), w.left.clone())?,
            FinFunction::new(a, dst.indexing.clone(), w.right.clone())?,
        )?;
        let members = w.members.iter().map(|m| self.pro_normal(m)).collect::<TheoryResult<Vec<_>>>()?;
        Ok(DblFam::covariant(Span).proarrow(src, dst, indexing, members)?)
    }

    pub fn product(&self, w: &ProdWord) -> TheoryResult<EvaluatedProduct> {
        let family = self.family(w)?;
        let chosen = span_product(&family)?;
        let word = ProWord::Prod(w.clone());
        let over = self
            .model
            .products
            .iter()
            .find(|o| self.theory().normalize_pro(&o.word).ok().as_ref() == Some(&word));
        let Some(over) = over else {
            return Ok(EvaluatedProduct {
                family,
                phi: SpanMorphism::identity(&chosen.pro),
                span: chosen.pro,
                projections: chosen.cells,
                overridden: false,
            });
        };
        if over.projections.len() != chosen.cells.len() {
            return Err(TheoryError::FrameMismatch(format!("override for {word:?} has the wrong number of projections")));
        }
        let constraints: Vec<_> = chosen.cells.iter().cloned().zip(over.projections.iter().cloned()).collect();
        let (ix, iy) = (FinFunction::identity(&chosen.src), FinFunction::identity(&chosen.dst));
        let phi = one(Span.solve_post(&over.span, &chosen.pro, &ix, &iy, &constraints), "product comparison")?;
        Ok(EvaluatedProduct {
            family,
            span: over.span.clone(),
            projections: over.projections.clone(),
            phi,
            overridden: true,
        })
    }

    /// The projections of a normalized word viewed as a family; a word that
    /// is not a product has its identity cell as its only projection.
    fn projections(&self, p: &ProWord) -> TheoryResult<Vec<SpanMorphism>> {
        match p {
            ProWord::Prod(w) => Ok(self.product(w)?.projections),
            other => Ok(vec![SpanMorphism::identity(&self.pro_normal(other)?)]),
        }
    }

    pub fn cell(&self, c: &CellWord) -> TheoryResult<SpanMorphism> {
        let t = self.theory();
        Ok(match c {
            CellWord::Gen(n) => self.model.cells.get(n).cloned().ok_or_else(|| missing(format!("cell `{n}`")))?,
            CellWord::IdPro(p) => SpanMorphism::identity(&self.pro(p)?),
            CellWord::IdArr(f) => self.identity_on_arrow(&t.normalize_arr(f)?)?,
            CellWord::Vert(a, b) => self.cell(a)?.then(&self.cell(b)?)?,
            CellWord::Ext(a, b) => {
                t.cell_frame(c)?;
                if is_ext_unit(t, a)? {
                    self.cell(b)?
                } else if is_ext_unit(t, b)? {
                    self.cell(a)?
                } else {
                    return Err(TheoryError::IllTypedWord(
                        "external composites are evaluated only when one side is an identity cell on an arrow".into(),
                    ));
                }
            }
            CellWord::Proj { product, member } => {
                let p = t.normalize_pro(product)?;
                self.projections(&p)?
                    .get(*member)
                    .cloned()
                    .ok_or_else(|| TheoryError::IllTypedWord(format!("projection {member} out of range")))?
            }
            CellWord::Pair {
                top,
                bottom,
                left,
                right,
                components,
            } => {
                t.cell_frame(c)?;
                let b = t.normalize_pro(bottom)?;
                let projections = self.projections(&b)?;
                let values = components.iter().map(|k| self.cell(k)).collect::<TheoryResult<Vec<_>>>()?;
                if b.as_prod().is_none() {
                    return Ok(values.into_iter().next().expect("one component"));
                }
                let constraints: Vec<_> = projections.into_iter().zip(values).collect();
                one(
                    Span.solve_post(&self.pro(top)?, &self.pro_normal(&b)?, &self.arr(left)?, &self.arr(right)?, &constraints),
                    "pairing of cells",
                )?
            }
        })
    }

    /// `M(1_f)` for a normalized arrow word.
    fn identity_on_arrow(&self, f: &ArrWord) -> TheoryResult<SpanMorphism> {
        match f {
            ArrWord::Id(x) => Ok(SpanMorphism::identity(&self.pro(&ProWord::Id(x.clone()))?)),
            ArrWord::Gen(n) => self.model.arrow_cells.get(n).cloned().ok_or_else(|| missing(format!("identity cell on arrow `{n}`"))),
            ArrWord::Then(a, b) => Ok(self.identity_on_arrow(a)?.then(&self.identity_on_arrow(b)?)?),
            ArrWord::Proj { factors, index } => self.cell(&CellWord::Proj {
                product: ProWord::Id(ObWord::Prod(factors.clone())),
                member: *index,
            }),
            ArrWord::Pair { src, components } => {
                let (_, dst) = self.theory().arr_frame(f)?;
                self.cell(&CellWord::Pair {
                    top: ProWord::Id(src.clone()),
                    bottom: ProWord::Id(dst),
                    left: f.clone(),
                    right: f.clone(),
                    components: components.iter().map(|g| CellWord::IdArr(g.clone())).collect(),
                })
            }
            ArrWord::Structure { .. } => unreachable!("structure arrows are normalized to pairings"),
        }
    }

    fn table_laxator(&self, p: &ProWord, q: &ProWord) -> TheoryResult<SpanMorphism> {
        let t = self.theory();
        self.model
            .laxators
            .iter()
            .find(|e| t.normalize_pro(&e.left).ok().as_ref() == Some(p) && t.normalize_pro(&e.right).ok().as_ref() == Some(q))
            .map(|e| e.cell.clone())
            .ok_or_else(|| missing(format!("laxator at ({p:?}, {q:?})")))
    }

    /// The laxator at two composable words. Between words that are not
    /// products it is looked up; otherwise it is derived as the product
    /// comparison of the member values followed by the product of the
    /// member laxators, conjugated by the comparisons `Φ`.
    pub fn laxator(&self, p: &ProWord, q: &ProWord) -> TheoryResult<SpanMorphism> {
        let t = self.theory();
        let (p, q) = (t.normalize_pro(p)?, t.normalize_pro(q)?);
        if p.as_prod().is_none() && q.as_prod().is_none() {
            return self.table_laxator(&p, &q);
        }
        let (fp, fq) = (t.as_family(p.clone())?, t.as_family(q.clone())?);
        let composite = t.compose_normal(p.clone(), q.clone())?;
        let fc = t.as_family(composite.clone())?;
        let (ep, eq, ec) = (self.as_product(&fp)?, self.as_product(&fq)?, self.as_product(&fc)?);

        let pi = product_comparison(&Span, &ep.family, &eq.family)?.cell;
        let composed = DblFam::covariant(Span).compose_pro(&ep.family, &eq.family)?;
        let through = span_product(&composed)?;
        let mut constraints = Vec::with_capacity(fc.members.len());
        for (c, (a, b)) in pair_positions(&ep.family.indexing, &eq.family.indexing).into_iter().enumerate() {
            let f = self.laxator(&fp.members[a], &fq.members[b])?;
            constraints.push((span_product(&ec.family)?.cells[c].clone(), through.cells[c].then(&f)?));
        }
        let ix = FinFunction::identity(through.pro.left_foot());
        let iy = FinFunction::identity(through.pro.right_foot());
        let chosen_target = span_product(&ec.family)?.pro;
        let product_of_laxators = one(Span.solve_post(&through.pro, &chosen_target, &ix, &iy, &constraints), "product of laxators")?;
        let phi_inverse = ec
            .phi
            .inverse()
            .ok_or_else(|| TheoryError::NotDetermined(format!("comparison at {composite:?} is not invertible")))?;
        Ok(ep.phi.beside(&eq.phi)?.then(&pi)?.then(&product_of_laxators)?.then(&phi_inverse)?)
    }

    /// The laxator at two composable words recomputed as the unique cell
    /// whose composite with each projection of the target is the composite
    /// of the member projections with the member laxator.
    pub fn recomputed_laxator(&self, p: &ProWord, q: &ProWord) -> TheoryResult<SpanMorphism> {
        let t = self.theory();
        let (p, q) = (t.normalize_pro(p)?, t.normalize_pro(q)?);
        if p.as_prod().is_none() && q.as_prod().is_none() {
            return self.table_laxator(&p, &q);
        }
        let (fp, fq) = (t.as_family(p.clone())?, t.as_family(q.clone())?);
        let composite = t.compose_normal(p.clone(), q.clone())?;
        let (mp, mq, mc) = (self.pro_normal(&p)?, self.pro_normal(&q)?, self.pro_normal(&composite)?);
        let (pp, pq, pc) = (self.projections(&p)?, self.projections(&q)?, self.projections(&composite)?);
        let (ip, iq) = (self.family_indexing(&fp)?, self.family_indexing(&fq)?);
        let mut constraints = Vec::with_capacity(pc.len());
        for (c, (a, b)) in pair_positions(&ip, &iq).into_iter().enumerate() {
            let f = self.laxator(&fp.members[a], &fq.members[b])?;
            constraints.push((pc[c].clone(), pp[a].beside(&pq[b])?.then(&f)?));
        }
        let top = mp.compose(&mq)?;
        let ix = FinFunction::identity(top.left_foot());
        let iy = FinFunction::identity(top.right_foot());
        one(Span.solve_post(&top, &mc, &ix, &iy, &constraints), "laxator through projections")
    }

    fn family_indexing(&self, w: &ProdWord) -> TheoryResult<SetSpan> {
        let a = FinSet::range(w.members.len());
        Ok(SetSpan::new(
            FinFunction::new(a.clone(), FinSet::range(w.src.len()), w.left.clone())?,
            FinFunction::new(a, FinSet::range(w.dst.len()), w.right.clone())?,
        )?)
    }

    fn as_product(&self, w: &ProdWord) -> TheoryResult<EvaluatedProduct> {
        if w.is_unary() {
            let family = self.family(w)?;
            let span = family.components[0].clone();
            return Ok(EvaluatedProduct {
                family,
                phi: SpanMorphism::identity(&span),
                projections: vec![SpanMorphism::identity(&span)],
                span,
                overridden: false,
            });
        }
        self.product(w)
    }

    /// The unitor at an object word: looked up at generators, derived at
    /// products as the identity comparison followed by the product of the
    /// factor unitors.
    pub fn unitor(&self, x: &ObWord) -> TheoryResult<SpanMorphism> {
        match crate::theory::words::normalize_ob(x) {
            ObWord::Gen(n) => self.model.unitors.get(&n).cloned().ok_or_else(|| missing(format!("unitor at `{n}`"))),
            ObWord::Prod(xs) => {
                let sets = self.obs(&xs)?;
                let fam = FamObject::new(FinSet::range(xs.len()), sets.clone())?;
                let pi_x = product_identity_comparison(&Span, &fam)?.cell;
                let ids = DblFam::covariant(Span).id_pro(&fam);
                let through = span_product(&ids)?;
                let w = self.theory().as_family(self.theory().normalize_pro(&ProWord::Id(ObWord::Prod(xs.clone())))?)?;
                let target = self.as_product(&w)?;
                let chosen = span_product(&target.family)?;
                let constraints = xs
                    .iter()
                    .enumerate()
                    .map(|(i, xi)| Ok((chosen.cells[i].clone(), through.cells[i].then(&self.unitor(xi)?)?)))
                    .collect::<TheoryResult<Vec<_>>>()?;
                let (px, _) = Span.product_object(&sets)?;
                let id = FinFunction::identity(&px);
                let product = one(Span.solve_post(&through.pro, &chosen.pro, &id, &id, &constraints), "product of unitors")?;
                let phi_inverse = target.phi.inverse().ok_or_else(|| TheoryError::NotDetermined("comparison at a product of identities is not invertible".into()))?;
                Ok(pi_x.then(&product)?.then(&phi_inverse)?)
            }
        }
    }

    /// The unitor at a product object recomputed through the projections:
    /// the unique cell `U` with `U ; M(π_i) = id_{π_i} ; F_{x_i}`.
    pub fn recomputed_unitor(&self, x: &ObWord) -> TheoryResult<SpanMorphism> {
        match crate::theory::words::normalize_ob(x) {
            ObWord::Gen(_) => self.unitor(x),
            ObWord::Prod(xs) => {
                let sets = self.obs(&xs)?;
                let (px, legs) = Span.product_object(&sets)?;
                let p = self.theory().normalize_pro(&ProWord::Id(ObWord::Prod(xs.clone())))?;
                let projections = self.projections(&p)?;
                let constraints = xs
                    .iter()
                    .enumerate()
                    .map(|(i, xi)| Ok((projections[i].clone(), Span.id_cell_on_arrow(&legs[i]).then(&self.unitor(xi)?)?)))
                    .collect::<TheoryResult<Vec<_>>>()?;
                let id = FinFunction::identity(&px);
                one(
                    Span.solve_post(&SetSpan::identity(&px), &self.pro_normal(&p)?, &id, &id, &constraints),
                    "unitor through projections",
                )
            }
        }
    }
}

/// Whether a cell word is an identity cell on an arrow, hence a unit for
/// external composition.
fn is_ext_unit(t: &TheoryPresentation, c: &CellWord) -> TheoryResult<bool> {
    Ok(match c {
        CellWord::IdArr(_) => true,
        CellWord::IdPro(p) => matches!(t.normalize_pro(p)?, ProWord::Id(_)),
        _ => false,
    })
}
