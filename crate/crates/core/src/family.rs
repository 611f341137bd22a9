//! The double family constructions DblFam(D) and DblFamOp(D).
//!
//! Both are represented by [`DblFam`] with a [`Variance`] tag. In the
//! covariant case arrows carry an index map `I -> J` and cells are indexed by
//! the top indexing span; in the contravariant case arrows carry `J -> I` and
//! cells are indexed by the bottom indexing span, with the span map running
//! from bottom to top.

use crate::dblcat::span::pair_positions;
use crate::dblcat::{
    extend_span, BindingPair, CompanionPair, ConjointPair, DblError, DblResult, DoubleCategory, DoubleFunctor, Equipment,
    Span, Terminal,
};
use crate::finset::{
    coproduct_sets, copair_fns_into, product_indices, FinFunction, FinSet, SetSpan, SpanMorphism,
};
use crate::universal::FamilyCone;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// An indexing set `I` with an `I`-indexed family of base objects.
#[derive(Debug, Clone, PartialEq)]
pub struct FamObject<D: DoubleCategory> {
    pub indexing: FinSet,
    pub assignment: Vec<D::Ob>,
}

impl<D: DoubleCategory> FamObject<D> {
    pub fn new(indexing: FinSet, assignment: Vec<D::Ob>) -> DblResult<Self> {
        if indexing.len() != assignment.len() {
            return Err(DblError::FrameMismatch(format!(
                "family over {} indices has {} objects",
                indexing.len(),
                assignment.len()
            )));
        }
        Ok(FamObject { indexing, assignment })
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// An arrow of families: an index map and one base arrow per index of the
/// domain of the index map.
#[derive(Debug, Clone, PartialEq)]
pub struct FamArrow<D: DoubleCategory> {
    pub variance: Variance,
    pub src: FamObject<D>,
    pub dst: FamObject<D>,
    pub on_index: FinFunction,
    pub components: Vec<D::Arr>,
}

/// A proarrow of families: an indexing span and one base proarrow per apex
/// element, `m_a : x_{ℓ a} ⇸ y_{r a}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamProarrow<D: DoubleCategory> {
    pub src: FamObject<D>,
    pub dst: FamObject<D>,
    pub indexing: SetSpan,
    pub components: Vec<D::Pro>,
}

/// A cell of families: a map of indexing spans (top to bottom when
/// covariant, bottom to top when contravariant) and one base cell per apex
/// element of the span map's domain.
#[derive(Debug, Clone, PartialEq)]
pub struct FamCell<D: DoubleCategory> {
    pub variance: Variance,
    pub top: FamProarrow<D>,
    pub bottom: FamProarrow<D>,
    pub left: FamArrow<D>,
    pub right: FamArrow<D>,
    pub on_spans: SpanMorphism,
    pub components: Vec<D::Cell>,
}

/// DblFam(D) or DblFamOp(D).
#[derive(Debug, Clone, PartialEq)]
pub struct DblFam<D> {
    pub base: D,
    pub variance: Variance,
}

impl<D: DoubleCategory> DblFam<D> {
    pub fn covariant(base: D) -> Self {
        DblFam {
            base,
            variance: Variance::Covariant,
        }
    }

    pub fn contravariant(base: D) -> Self {
        DblFam {
            base,
            variance: Variance::Contravariant,
        }
    }

    fn covariant_tag(&self) -> bool {
        self.variance == Variance::Covariant
    }

    /// Builds a proarrow family, checking component frames.
    pub fn proarrow(&self, src: FamObject<D>, dst: FamObject<D>, indexing: SetSpan, components: Vec<D::Pro>) -> DblResult<FamProarrow<D>> {
        let p = FamProarrow {
            src,
            dst,
            indexing,
            components,
        };
        self.check_proarrow(&p).map_err(DblError::FrameMismatch)?;
        Ok(p)
    }

    fn check_proarrow(&self, p: &FamProarrow<D>) -> Result<(), String> {
        if p.indexing.left_foot() != &p.src.indexing || p.indexing.right_foot() != &p.dst.indexing {
            return Err("indexing span feet differ from the family index sets".into());
        }
        if p.components.len() != p.indexing.apex().len() {
            return Err("one component per apex element expected".into());
        }
        for (a, m) in p.components.iter().enumerate() {
            let (i, j) = (p.indexing.left().apply(a), p.indexing.right().apply(a));
            if self.base.pro_src(m) != p.src.assignment[i] || self.base.pro_dst(m) != p.dst.assignment[j] {
                return Err(format!("component {a} has the wrong endpoints"));
            }
        }
        Ok(())
    }

    /// Builds an arrow family, checking component frames.
    pub fn arrow(&self, src: FamObject<D>, dst: FamObject<D>, on_index: FinFunction, components: Vec<D::Arr>) -> DblResult<FamArrow<D>> {
        let f = FamArrow {
            variance: self.variance,
            src,
            dst,
            on_index,
            components,
        };
        self.check_arrow(&f).map_err(DblError::FrameMismatch)?;
        Ok(f)
    }

    fn check_arrow(&self, f: &FamArrow<D>) -> Result<(), String> {
        if f.variance != self.variance {
            return Err("arrow has the wrong variance".into());
        }
        let (from, to) = if self.covariant_tag() { (&f.src, &f.dst) } else { (&f.dst, &f.src) };
        if f.on_index.dom() != &from.indexing || f.on_index.cod() != &to.indexing {
            return Err("index map does not fit the families".into());
        }
        if f.components.len() != from.len() {
            return Err("one component per index expected".into());
        }
        for (k, c) in f.components.iter().enumerate() {
            let (s, t) = if self.covariant_tag() {
                (&f.src.assignment[k], &f.dst.assignment[f.on_index.apply(k)])
            } else {
                (&f.src.assignment[f.on_index.apply(k)], &f.dst.assignment[k])
            };
            if &self.base.arrow_src(c) != s || &self.base.arrow_dst(c) != t {
                return Err(format!("component {k} has the wrong endpoints"));
            }
        }
        Ok(())
    }

    /// The base proarrow expected at `k` of the span map's domain, as
    /// `(top component, bottom component)` indices.
    fn cell_component_indices(&self, a: &FamCell<D>, k: usize) -> (usize, usize) {
        if self.covariant_tag() {
            (k, a.on_spans.on_apex().apply(k))
        } else {
            (a.on_spans.on_apex().apply(k), k)
        }
    }

    /// Base arrows on the two sides of component `k`.
    fn cell_sides(&self, a: &FamCell<D>, k: usize) -> (D::Arr, D::Arr) {
        let indexing = if self.covariant_tag() { &a.top.indexing } else { &a.bottom.indexing };
        (
            a.left.components[indexing.left().apply(k)].clone(),
            a.right.components[indexing.right().apply(k)].clone(),
        )
    }

    fn check_cell(&self, a: &FamCell<D>) -> Result<(), String> {
        if a.variance != self.variance {
            return Err("cell has the wrong variance".into());
        }
        self.check_proarrow(&a.top)?;
        self.check_proarrow(&a.bottom)?;
        self.check_arrow(&a.left)?;
        self.check_arrow(&a.right)?;
        if a.left.src != a.top.src || a.left.dst != a.bottom.src || a.right.src != a.top.dst || a.right.dst != a.bottom.dst {
            return Err("side arrows do not fit the proarrows".into());
        }
        let (from, to) = if self.covariant_tag() { (&a.top, &a.bottom) } else { (&a.bottom, &a.top) };
        SpanMorphism::new(
            from.indexing.clone(),
            to.indexing.clone(),
            a.left.on_index.clone(),
            a.on_spans.on_apex().clone(),
            a.right.on_index.clone(),
        )
        .map_err(|e| e.to_string())?;
        if a.on_spans.src() != &from.indexing || a.on_spans.dst() != &to.indexing {
            return Err("span map has the wrong frame".into());
        }
        if a.components.len() != from.indexing.apex().len() {
            return Err("one component per apex element expected".into());
        }
        for (k, c) in a.components.iter().enumerate() {
            let (t, b) = self.cell_component_indices(a, k);
            let (l, r) = self.cell_sides(a, k);
            if self.base.cell_top(c) != a.top.components[t]
                || self.base.cell_bottom(c) != a.bottom.components[b]
                || self.base.cell_left(c) != l
                || self.base.cell_right(c) != r
            {
                return Err(format!("component {k} has the wrong frame"));
            }
            self.base.validate_cell(c).map_err(|e| format!("component {k}: {e}"))?;
        }
        Ok(())
    }

    /// Builds a cell, checking all frames.
    pub fn cell(
        &self,
        top: FamProarrow<D>,
        bottom: FamProarrow<D>,
        left: FamArrow<D>,
        right: FamArrow<D>,
        on_spans: SpanMorphism,
        components: Vec<D::Cell>,
    ) -> DblResult<FamCell<D>> {
        let a = FamCell {
            variance: self.variance,
            top,
            bottom,
            left,
            right,
            on_spans,
            components,
        };
        self.check_cell(&a).map_err(DblError::FrameMismatch)?;
        Ok(a)
    }

    /// The singleton family on a base object.
    pub fn delta(&self, x: &D::Ob) -> FamObject<D> {
        FamObject {
            indexing: FinSet::singleton("*"),
            assignment: vec![x.clone()],
        }
    }

    pub fn delta_arrow(&self, f: &D::Arr) -> FamArrow<D> {
        let one = FinSet::singleton("*");
        FamArrow {
            variance: self.variance,
            src: self.delta(&self.base.arrow_src(f)),
            dst: self.delta(&self.base.arrow_dst(f)),
            on_index: FinFunction::identity(&one),
            components: vec![f.clone()],
        }
    }

    pub fn delta_pro(&self, m: &D::Pro) -> FamProarrow<D> {
        FamProarrow {
            src: self.delta(&self.base.pro_src(m)),
            dst: self.delta(&self.base.pro_dst(m)),
            indexing: SetSpan::identity(&FinSet::singleton("*")),
            components: vec![m.clone()],
        }
    }

    pub fn delta_cell(&self, a: &D::Cell) -> FamCell<D> {
        FamCell {
            variance: self.variance,
            top: self.delta_pro(&self.base.cell_top(a)),
            bottom: self.delta_pro(&self.base.cell_bottom(a)),
            left: self.delta_arrow(&self.base.cell_left(a)),
            right: self.delta_arrow(&self.base.cell_right(a)),
            on_spans: SpanMorphism::identity(&SetSpan::identity(&FinSet::singleton("*"))),
            components: vec![a.clone()],
        }
    }

    fn lift_span_cell(&self, on_spans: SpanMorphism, top: FamProarrow<D>, bottom: FamProarrow<D>, left: FamArrow<D>, right: FamArrow<D>, components: Vec<D::Cell>) -> FamCell<D> {
        FamCell {
            variance: self.variance,
            top,
            bottom,
            left,
            right,
            on_spans,
            components,
        }
    }

    /// Merges families of families by disjoint union of the index sets,
    /// with identity-component (co)projections.
    pub fn merge_objects(&self, objs: &[FamObject<D>]) -> (FamObject<D>, Vec<FamArrow<D>>) {
        let (index, inj) = coproduct_sets(&objs.iter().map(|o| o.indexing.clone()).collect::<Vec<_>>());
        let assignment: Vec<D::Ob> = objs.iter().flat_map(|o| o.assignment.iter().cloned()).collect();
        let merged = FamObject {
            indexing: index,
            assignment,
        };
        let legs = objs
            .iter()
            .zip(inj)
            .map(|(o, i)| {
                let components = o.assignment.iter().map(|x| self.base.id_arrow(x)).collect();
                let (src, dst) = if self.covariant_tag() { (o.clone(), merged.clone()) } else { (merged.clone(), o.clone()) };
                FamArrow {
                    variance: self.variance,
                    src,
                    dst,
                    on_index: i,
                    components,
                }
            })
            .collect();
        (merged, legs)
    }

    /// Sum of a family of families: the coproduct in DblFam(D) when
    /// covariant, the product in DblFamOp(D) when contravariant. Index sets
    /// and indexing apexes are merged by disjoint union, legs by copairing;
    /// the (co)projections have identity base components.
    pub fn sum(&self, outer: &FamProarrow<DblFam<D>>) -> DblResult<FamilyCone<DblFam<D>>> {
        let (src, src_legs) = self.merge_objects(&outer.src.assignment);
        let (dst, dst_legs) = self.merge_objects(&outer.dst.assignment);
        let (apex, apex_inj) = coproduct_sets(&outer.components.iter().map(|m| m.indexing.apex().clone()).collect::<Vec<_>>());
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (c, m) in outer.components.iter().enumerate() {
            let (k, l) = (outer.indexing.left().apply(c), outer.indexing.right().apply(c));
            left.push(m.indexing.left().then(&src_legs[k].on_index)?);
            right.push(m.indexing.right().then(&dst_legs[l].on_index)?);
        }
        let indexing = SetSpan::new(copair_fns_into(&src.indexing, &left)?, copair_fns_into(&dst.indexing, &right)?)?;
        debug_assert_eq!(indexing.apex(), &apex);
        let components: Vec<D::Pro> = outer.components.iter().flat_map(|m| m.components.iter().cloned()).collect();
        let summit = FamProarrow {
            src: src.clone(),
            dst: dst.clone(),
            indexing,
            components,
        };
        let mut cells = Vec::new();
        for (c, m) in outer.components.iter().enumerate() {
            let (k, l) = (outer.indexing.left().apply(c), outer.indexing.right().apply(c));
            let on_spans = SpanMorphism::new(
                m.indexing.clone(),
                summit.indexing.clone(),
                src_legs[k].on_index.clone(),
                apex_inj[c].clone(),
                dst_legs[l].on_index.clone(),
            )?;
            let ids = m.components.iter().map(|p| self.base.id_cell_on_pro(p)).collect();
            cells.push(if self.covariant_tag() {
                self.lift_span_cell(on_spans, m.clone(), summit.clone(), src_legs[k].clone(), dst_legs[l].clone(), ids)
            } else {
                self.lift_span_cell(on_spans, summit.clone(), m.clone(), src_legs[k].clone(), dst_legs[l].clone(), ids)
            });
        }
        Ok(FamilyCone {
            family: outer.clone(),
            src,
            dst,
            src_legs,
            dst_legs,
            pro: summit,
            cells,
        })
    }
}

impl<D: DoubleCategory> DoubleCategory for DblFam<D> {
    type Ob = FamObject<D>;
    type Arr = FamArrow<D>;
    type Pro = FamProarrow<D>;
    type Cell = FamCell<D>;

    fn arrow_src(&self, f: &FamArrow<D>) -> FamObject<D> {
        f.src.clone()
    }
    fn arrow_dst(&self, f: &FamArrow<D>) -> FamObject<D> {
        f.dst.clone()
    }
    fn pro_src(&self, m: &FamProarrow<D>) -> FamObject<D> {
        m.src.clone()
    }
    fn pro_dst(&self, m: &FamProarrow<D>) -> FamObject<D> {
        m.dst.clone()
    }
    fn cell_top(&self, a: &FamCell<D>) -> FamProarrow<D> {
        a.top.clone()
    }
    fn cell_bottom(&self, a: &FamCell<D>) -> FamProarrow<D> {
        a.bottom.clone()
    }
    fn cell_left(&self, a: &FamCell<D>) -> FamArrow<D> {
        a.left.clone()
    }
    fn cell_right(&self, a: &FamCell<D>) -> FamArrow<D> {
        a.right.clone()
    }

    fn id_arrow(&self, x: &FamObject<D>) -> FamArrow<D> {
        FamArrow {
            variance: self.variance,
            src: x.clone(),
            dst: x.clone(),
            on_index: FinFunction::identity(&x.indexing),
            components: x.assignment.iter().map(|o| self.base.id_arrow(o)).collect(),
        }
    }

    fn compose_arrows(&self, f: &FamArrow<D>, g: &FamArrow<D>) -> DblResult<FamArrow<D>> {
        if f.dst != g.src {
            return Err(DblError::EndpointMismatch("family arrows not composable".into()));
        }
        let (on_index, components) = if self.covariant_tag() {
            let comps = (0..f.src.len())
                .map(|i| self.base.compose_arrows(&f.components[i], &g.components[f.on_index.apply(i)]))
                .collect::<DblResult<Vec<_>>>()?;
            (f.on_index.then(&g.on_index)?, comps)
        } else {
            let comps = (0..g.dst.len())
                .map(|k| self.base.compose_arrows(&f.components[g.on_index.apply(k)], &g.components[k]))
                .collect::<DblResult<Vec<_>>>()?;
            (g.on_index.then(&f.on_index)?, comps)
        };
        Ok(FamArrow {
            variance: self.variance,
            src: f.src.clone(),
            dst: g.dst.clone(),
            on_index,
            components,
        })
    }

    fn id_pro(&self, x: &FamObject<D>) -> FamProarrow<D> {
        FamProarrow {
            src: x.clone(),
            dst: x.clone(),
            indexing: SetSpan::identity(&x.indexing),
            components: x.assignment.iter().map(|o| self.base.id_pro(o)).collect(),
        }
    }

    fn compose_pro(&self, m: &FamProarrow<D>, n: &FamProarrow<D>) -> DblResult<FamProarrow<D>> {
        if m.dst != n.src {
            return Err(DblError::EndpointMismatch("family proarrows not composable".into()));
        }
        let indexing = m.indexing.compose(&n.indexing)?;
        let components = pair_positions(&m.indexing, &n.indexing)
            .into_iter()
            .map(|(a, b)| self.base.compose_pro(&m.components[a], &n.components[b]))
            .collect::<DblResult<Vec<_>>>()?;
        Ok(FamProarrow {
            src: m.src.clone(),
            dst: n.dst.clone(),
            indexing,
            components,
        })
    }

    fn id_cell_on_pro(&self, m: &FamProarrow<D>) -> FamCell<D> {
        FamCell {
            variance: self.variance,
            top: m.clone(),
            bottom: m.clone(),
            left: self.id_arrow(&m.src),
            right: self.id_arrow(&m.dst),
            on_spans: SpanMorphism::identity(&m.indexing),
            components: m.components.iter().map(|p| self.base.id_cell_on_pro(p)).collect(),
        }
    }

    fn id_cell_on_arrow(&self, f: &FamArrow<D>) -> FamCell<D> {
        let (from, to) = if self.covariant_tag() { (&f.src, &f.dst) } else { (&f.dst, &f.src) };
        let on_spans = SpanMorphism::new(
            SetSpan::identity(&from.indexing),
            SetSpan::identity(&to.indexing),
            f.on_index.clone(),
            f.on_index.clone(),
            f.on_index.clone(),
        )
        .expect("identity spans commute with any index map");
        FamCell {
            variance: self.variance,
            top: self.id_pro(&f.src),
            bottom: self.id_pro(&f.dst),
            left: f.clone(),
            right: f.clone(),
            on_spans,
            components: f.components.iter().map(|c| self.base.id_cell_on_arrow(c)).collect(),
        }
    }

    fn compose_cells_vert(&self, a: &FamCell<D>, b: &FamCell<D>) -> DblResult<FamCell<D>> {
        if a.bottom != b.top {
            return Err(DblError::EndpointMismatch("vertical composite: middle families differ".into()));
        }
        let (on_spans, components) = if self.covariant_tag() {
            let comps = (0..a.top.indexing.apex().len())
                .map(|k| self.base.compose_cells_vert(&a.components[k], &b.components[a.on_spans.on_apex().apply(k)]))
                .collect::<DblResult<Vec<_>>>()?;
            (a.on_spans.then(&b.on_spans)?, comps)
        } else {
            let comps = (0..b.bottom.indexing.apex().len())
                .map(|k| self.base.compose_cells_vert(&a.components[b.on_spans.on_apex().apply(k)], &b.components[k]))
                .collect::<DblResult<Vec<_>>>()?;
            (b.on_spans.then(&a.on_spans)?, comps)
        };
        Ok(FamCell {
            variance: self.variance,
            top: a.top.clone(),
            bottom: b.bottom.clone(),
            left: self.compose_arrows(&a.left, &b.left)?,
            right: self.compose_arrows(&a.right, &b.right)?,
            on_spans,
            components,
        })
    }

    fn compose_cells_ext(&self, a: &FamCell<D>, b: &FamCell<D>) -> DblResult<FamCell<D>> {
        if a.right != b.left {
            return Err(DblError::EndpointMismatch("external composite: shared arrows differ".into()));
        }
        let top = self.compose_pro(&a.top, &b.top)?;
        let bottom = self.compose_pro(&a.bottom, &b.bottom)?;
        let (p, q) = if self.covariant_tag() {
            (&a.top.indexing, &b.top.indexing)
        } else {
            (&a.bottom.indexing, &b.bottom.indexing)
        };
        let components = pair_positions(p, q)
            .into_iter()
            .map(|(s, t)| self.base.compose_cells_ext(&a.components[s], &b.components[t]))
            .collect::<DblResult<Vec<_>>>()?;
        Ok(FamCell {
            variance: self.variance,
            top,
            bottom,
            left: a.left.clone(),
            right: b.right.clone(),
            on_spans: a.on_spans.beside(&b.on_spans)?,
            components,
        })
    }

    fn associator(&self, m: &FamProarrow<D>, n: &FamProarrow<D>, p: &FamProarrow<D>) -> DblResult<FamCell<D>> {
        let mn = self.compose_pro(m, n)?;
        let np = self.compose_pro(n, p)?;
        let top = self.compose_pro(&mn, p)?;
        let bottom = self.compose_pro(m, &np)?;
        let span_assoc = Span.associator(&m.indexing, &n.indexing, &p.indexing)?;
        let (on_spans, components) = if self.covariant_tag() {
            let inner = pair_positions(&m.indexing, &n.indexing);
            let comps = pair_positions(&mn.indexing, &p.indexing)
                .into_iter()
                .map(|(ab, c)| {
                    let (a, b) = inner[ab];
                    self.base.associator(&m.components[a], &n.components[b], &p.components[c])
                })
                .collect::<DblResult<Vec<_>>>()?;
            (span_assoc, comps)
        } else {
            let inner = pair_positions(&n.indexing, &p.indexing);
            let comps = pair_positions(&m.indexing, &np.indexing)
                .into_iter()
                .map(|(a, bc)| {
                    let (b, c) = inner[bc];
                    self.base.associator(&m.components[a], &n.components[b], &p.components[c])
                })
                .collect::<DblResult<Vec<_>>>()?;
            (span_assoc.inverse().expect("associator is invertible"), comps)
        };
        Ok(FamCell {
            variance: self.variance,
            top,
            bottom,
            left: self.id_arrow(&m.src),
            right: self.id_arrow(&p.dst),
            on_spans,
            components,
        })
    }

    fn left_unitor(&self, m: &FamProarrow<D>) -> DblResult<FamCell<D>> {
        let top = self.compose_pro(&self.id_pro(&m.src), m)?;
        let span_unitor = Span.left_unitor(&m.indexing)?;
        let order = if self.covariant_tag() {
            pair_positions(&SetSpan::identity(&m.src.indexing), &m.indexing).into_iter().map(|(_, a)| a).collect()
        } else {
            (0..m.components.len()).collect::<Vec<_>>()
        };
        let components = order.into_iter().map(|a| self.base.left_unitor(&m.components[a])).collect::<DblResult<Vec<_>>>()?;
        let on_spans = if self.covariant_tag() { span_unitor } else { span_unitor.inverse().expect("unitor is invertible") };
        Ok(FamCell {
            variance: self.variance,
            top,
            bottom: m.clone(),
            left: self.id_arrow(&m.src),
            right: self.id_arrow(&m.dst),
            on_spans,
            components,
        })
    }

    fn right_unitor(&self, m: &FamProarrow<D>) -> DblResult<FamCell<D>> {
        let top = self.compose_pro(m, &self.id_pro(&m.dst))?;
        let span_unitor = Span.right_unitor(&m.indexing)?;
        let order = if self.covariant_tag() {
            pair_positions(&m.indexing, &SetSpan::identity(&m.dst.indexing)).into_iter().map(|(a, _)| a).collect()
        } else {
            (0..m.components.len()).collect::<Vec<_>>()
        };
        let components = order.into_iter().map(|a| self.base.right_unitor(&m.components[a])).collect::<DblResult<Vec<_>>>()?;
        let on_spans = if self.covariant_tag() { span_unitor } else { span_unitor.inverse().expect("unitor is invertible") };
        Ok(FamCell {
            variance: self.variance,
            top,
            bottom: m.clone(),
            left: self.id_arrow(&m.src),
            right: self.id_arrow(&m.dst),
            on_spans,
            components,
        })
    }

    fn invert_arrow(&self, f: &FamArrow<D>) -> Option<FamArrow<D>> {
        let inv = f.on_index.inverse()?;
        let components = (0..inv.dom().len())
            .map(|k| self.base.invert_arrow(&f.components[inv.apply(k)]))
            .collect::<Option<Vec<_>>>()?;
        Some(FamArrow {
            variance: self.variance,
            src: f.dst.clone(),
            dst: f.src.clone(),
            on_index: inv,
            components,
        })
    }

    fn invert_cell(&self, a: &FamCell<D>) -> Option<FamCell<D>> {
        let on_spans = a.on_spans.inverse()?;
        let components = (0..on_spans.src().apex().len())
            .map(|k| self.base.invert_cell(&a.components[on_spans.on_apex().apply(k)]))
            .collect::<Option<Vec<_>>>()?;
        Some(FamCell {
            variance: self.variance,
            top: a.bottom.clone(),
            bottom: a.top.clone(),
            left: self.invert_arrow(&a.left)?,
            right: self.invert_arrow(&a.right)?,
            on_spans,
            components,
        })
    }

    fn validate_cell(&self, a: &FamCell<D>) -> Result<(), String> {
        self.check_cell(a)
    }

    fn objects(&self, bound: usize) -> Vec<FamObject<D>> {
        let base = self.base.objects(bound);
        let mut out = Vec::new();
        for k in 0..=bound {
            for pick in product_indices(&vec![base.len(); k]) {
                out.push(FamObject {
                    indexing: FinSet::range(k),
                    assignment: pick.iter().map(|&i| base[i].clone()).collect(),
                });
            }
        }
        out
    }

    fn arrows_between(&self, x: &FamObject<D>, y: &FamObject<D>) -> Vec<FamArrow<D>> {
        let (from, to) = if self.covariant_tag() { (x, y) } else { (y, x) };
        let mut out = Vec::new();
        for f0 in FinFunction::all(&from.indexing, &to.indexing) {
            let choices: Vec<Vec<D::Arr>> = (0..from.len())
                .map(|k| {
                    let t = f0.apply(k);
                    if self.covariant_tag() {
                        self.base.arrows_between(&x.assignment[k], &y.assignment[t])
                    } else {
                        self.base.arrows_between(&x.assignment[t], &y.assignment[k])
                    }
                })
                .collect();
            for pick in product_indices(&choices.iter().map(Vec::len).collect::<Vec<_>>()) {
                out.push(FamArrow {
                    variance: self.variance,
                    src: x.clone(),
                    dst: y.clone(),
                    on_index: f0.clone(),
                    components: pick.iter().enumerate().map(|(k, &i)| choices[k][i].clone()).collect(),
                });
            }
        }
        out
    }

    fn proarrows_between(&self, x: &FamObject<D>, y: &FamObject<D>, bound: usize) -> Vec<FamProarrow<D>> {
        let mut out = Vec::new();
        for span in SetSpan::all_between(&x.indexing, &y.indexing, bound, true) {
            let choices: Vec<Vec<D::Pro>> = (0..span.apex().len())
                .map(|a| self.base.proarrows_between(&x.assignment[span.left().apply(a)], &y.assignment[span.right().apply(a)], bound))
                .collect();
            for pick in product_indices(&choices.iter().map(Vec::len).collect::<Vec<_>>()) {
                out.push(FamProarrow {
                    src: x.clone(),
                    dst: y.clone(),
                    indexing: span.clone(),
                    components: pick.iter().enumerate().map(|(a, &i)| choices[a][i].clone()).collect(),
                });
            }
        }
        out
    }

    fn cells_in_frame(&self, top: &FamProarrow<D>, bottom: &FamProarrow<D>, left: &FamArrow<D>, right: &FamArrow<D>) -> Vec<FamCell<D>> {
        if left.src != top.src || left.dst != bottom.src || right.src != top.dst || right.dst != bottom.dst {
            return Vec::new();
        }
        let (from, to) = if self.covariant_tag() { (top, bottom) } else { (bottom, top) };
        let mut out = Vec::new();
        for on_spans in SpanMorphism::all_in_frame(&from.indexing, &to.indexing, &left.on_index, &right.on_index) {
            let skeleton = FamCell {
                variance: self.variance,
                top: top.clone(),
                bottom: bottom.clone(),
                left: left.clone(),
                right: right.clone(),
                on_spans,
                components: Vec::new(),
            };
            let choices: Vec<Vec<D::Cell>> = (0..from.indexing.apex().len())
                .map(|k| {
                    let (t, b) = self.cell_component_indices(&skeleton, k);
                    let (l, r) = self.cell_sides(&skeleton, k);
                    self.base.cells_in_frame(&top.components[t], &bottom.components[b], &l, &r)
                })
                .collect();
            for pick in product_indices(&choices.iter().map(Vec::len).collect::<Vec<_>>()) {
                let mut c = skeleton.clone();
                c.components = pick.iter().enumerate().map(|(k, &i)| choices[k][i].clone()).collect();
                out.push(c);
            }
        }
        out
    }
}

impl<D: Equipment> DblFam<D> {
    fn binding(&self, f: &FamArrow<D>, companion: bool) -> DblResult<CompanionPair<DblFam<D>>> {
        let base_pairs = f
            .components
            .iter()
            .map(|c| if companion { self.base.companion(c) } else { self.base.conjoint(c) })
            .collect::<DblResult<Vec<_>>>()
            .map_err(|e| DblError::MissingBaseCompanion(e.to_string()))?;
        let f0 = &f.on_index;
        let cov = self.covariant_tag();
        // Indexing span of the family proarrow, and the two span maps of
        // the unit and counit (always from the cell's indexing domain).
        let (from_idx, to_idx) = (f0.dom(), f0.cod());
        let id_from = FinFunction::identity(from_idx);
        let id_to = FinFunction::identity(to_idx);
        let (indexing, unit_span, counit_span) = match (cov, companion) {
            (true, true) => {
                let p = SetSpan::companion(f0);
                let u = SpanMorphism::new(SetSpan::identity(from_idx), p.clone(), id_from.clone(), id_from.clone(), f0.clone())?;
                let c = SpanMorphism::new(p.clone(), SetSpan::identity(to_idx), f0.clone(), f0.clone(), id_to.clone())?;
                (p, u, c)
            }
            (true, false) => {
                let p = SetSpan::conjoint(f0);
                let u = SpanMorphism::new(SetSpan::identity(from_idx), p.clone(), f0.clone(), id_from.clone(), id_from.clone())?;
                let c = SpanMorphism::new(p.clone(), SetSpan::identity(to_idx), id_to.clone(), f0.clone(), f0.clone())?;
                (p, u, c)
            }
            (false, true) => {
                // f0 : J -> I; proarrow I ⇸ J with legs (f0, id).
                let p = SetSpan::conjoint(f0);
                let u = SpanMorphism::new(p.clone(), SetSpan::identity(to_idx), id_to.clone(), f0.clone(), f0.clone())?;
                let c = SpanMorphism::new(SetSpan::identity(from_idx), p.clone(), f0.clone(), id_from.clone(), id_from.clone())?;
                (p, u, c)
            }
            (false, false) => {
                // Proarrow J ⇸ I with legs (id, f0).
                let p = SetSpan::companion(f0);
                let u = SpanMorphism::new(p.clone(), SetSpan::identity(to_idx), f0.clone(), f0.clone(), id_to.clone())?;
                let c = SpanMorphism::new(SetSpan::identity(from_idx), p.clone(), id_from.clone(), id_from.clone(), f0.clone())?;
                (p, u, c)
            }
        };
        let components: Vec<D::Pro> = base_pairs.iter().map(|b| b.proarrow.clone()).collect();
        let (src, dst) = if companion { (f.src.clone(), f.dst.clone()) } else { (f.dst.clone(), f.src.clone()) };
        let proarrow = self.proarrow(src, dst, indexing, components)?;
        let (unit_left, unit_right, counit_left, counit_right) = if companion {
            (self.id_arrow(&f.src), f.clone(), f.clone(), self.id_arrow(&f.dst))
        } else {
            (f.clone(), self.id_arrow(&f.src), self.id_arrow(&f.dst), f.clone())
        };
        let unit = self.cell(
            self.id_pro(&f.src),
            proarrow.clone(),
            unit_left,
            unit_right,
            unit_span,
            base_pairs.iter().map(|b| b.unit.clone()).collect(),
        )?;
        let counit = self.cell(
            proarrow.clone(),
            self.id_pro(&f.dst),
            counit_left,
            counit_right,
            counit_span,
            base_pairs.iter().map(|b| b.counit.clone()).collect(),
        )?;
        Ok(BindingPair {
            arrow: f.clone(),
            proarrow,
            unit,
            counit,
        })
    }
}

/// Companions and conjoints of family arrows are computed componentwise.
impl<D: Equipment> Equipment for DblFam<D> {
    fn companion(&self, f: &FamArrow<D>) -> DblResult<CompanionPair<DblFam<D>>> {
        self.binding(f, true)
    }

    fn conjoint(&self, f: &FamArrow<D>) -> DblResult<ConjointPair<DblFam<D>>> {
        self.binding(f, false)
    }
}

/// The extension of `m` along covariant family arrows `f` and `g`, built from
/// base extension cells: the result is indexed by the same apex with legs
/// `ℓ ; f0` and `r ; g0`.
pub fn fam_extension<D, E>(d: &DblFam<D>, m: &FamProarrow<D>, f: &FamArrow<D>, g: &FamArrow<D>, base_ext: E) -> DblResult<(FamProarrow<D>, FamCell<D>)>
where
    D: DoubleCategory,
    E: Fn(&D::Pro, &D::Arr, &D::Arr) -> DblResult<(D::Pro, D::Cell)>,
{
    if d.variance != crate::family::Variance::Covariant {
        return Err(DblError::FrameMismatch("extensions are built in the covariant construction".into()));
    }
    if f.src != m.src || g.src != m.dst {
        return Err(DblError::FrameMismatch("co-niche arrows do not leave the family's ends".into()));
    }
    let mut comps = Vec::with_capacity(m.components.len());
    let mut cells = Vec::with_capacity(m.components.len());
    for (a, p) in m.components.iter().enumerate() {
        let (fc, gc) = (&f.components[m.indexing.left().apply(a)], &g.components[m.indexing.right().apply(a)]);
        let (q, cell) = base_ext(p, fc, gc)?;
        comps.push(q);
        cells.push(cell);
    }
    let indexing = SetSpan::new(m.indexing.left().then(&f.on_index)?, m.indexing.right().then(&g.on_index)?)?;
    let ext = d.proarrow(f.dst.clone(), g.dst.clone(), indexing.clone(), comps)?;
    let on_spans = SpanMorphism::new(
        m.indexing.clone(),
        indexing,
        f.on_index.clone(),
        FinFunction::identity(m.indexing.apex()),
        g.on_index.clone(),
    )?;
    let cell = d.cell(m.clone(), ext.clone(), f.clone(), g.clone(), on_spans, cells)?;
    Ok((ext, cell))
}

/// [`fam_extension`] over Span, with base extensions computed by
/// [`extend_span`].
pub fn fam_extension_span(d: &DblFam<Span>, m: &FamProarrow<Span>, f: &FamArrow<Span>, g: &FamArrow<Span>) -> DblResult<(FamProarrow<Span>, FamCell<Span>)> {
    fam_extension(d, m, f, g, |p, fc, gc| extend_span(p, fc, gc))
}

/// The elementwise action `DblFam(F)` of a double functor.
#[derive(Debug, Clone, PartialEq)]
pub struct FamFunctor<F: DoubleFunctor> {
    pub functor: F,
    source: DblFam<F::Source>,
    target: DblFam<F::Target>,
}

impl<F: DoubleFunctor> FamFunctor<F> {
    pub fn new(functor: F, variance: Variance) -> Self {
        let source = DblFam {
            base: functor.source().clone(),
            variance,
        };
        let target = DblFam {
            base: functor.target().clone(),
            variance,
        };
        FamFunctor { functor, source, target }
    }
}

impl<F: DoubleFunctor> DoubleFunctor for FamFunctor<F> {
    type Source = DblFam<F::Source>;
    type Target = DblFam<F::Target>;

    fn source(&self) -> &Self::Source {
        &self.source
    }
    fn target(&self) -> &Self::Target {
        &self.target
    }
    fn ob(&self, x: &FamObject<F::Source>) -> FamObject<F::Target> {
        FamObject {
            indexing: x.indexing.clone(),
            assignment: x.assignment.iter().map(|o| self.functor.ob(o)).collect(),
        }
    }
    fn arr(&self, f: &FamArrow<F::Source>) -> FamArrow<F::Target> {
        FamArrow {
            variance: f.variance,
            src: self.ob(&f.src),
            dst: self.ob(&f.dst),
            on_index: f.on_index.clone(),
            components: f.components.iter().map(|c| self.functor.arr(c)).collect(),
        }
    }
    fn pro(&self, m: &FamProarrow<F::Source>) -> FamProarrow<F::Target> {
        FamProarrow {
            src: self.ob(&m.src),
            dst: self.ob(&m.dst),
            indexing: m.indexing.clone(),
            components: m.components.iter().map(|p| self.functor.pro(p)).collect(),
        }
    }
    fn cell(&self, a: &FamCell<F::Source>) -> FamCell<F::Target> {
        FamCell {
            variance: a.variance,
            top: self.pro(&a.top),
            bottom: self.pro(&a.bottom),
            left: self.arr(&a.left),
            right: self.arr(&a.right),
            on_spans: a.on_spans.clone(),
            components: a.components.iter().map(|c| self.functor.cell(c)).collect(),
        }
    }
    fn laxator(&self, m: &FamProarrow<F::Source>, n: &FamProarrow<F::Source>) -> DblResult<FamCell<F::Target>> {
        let top = self.target.compose_pro(&self.pro(m), &self.pro(n))?;
        let bottom = self.pro(&self.source.compose_pro(m, n)?);
        let components = pair_positions(&m.indexing, &n.indexing)
            .into_iter()
            .map(|(a, b)| self.functor.laxator(&m.components[a], &n.components[b]))
            .collect::<DblResult<Vec<_>>>()?;
        Ok(FamCell {
            variance: self.target.variance,
            left: self.target.id_arrow(&top.src),
            right: self.target.id_arrow(&top.dst),
            on_spans: SpanMorphism::identity(&top.indexing),
            top,
            bottom,
            components,
        })
    }
    fn unitor(&self, x: &FamObject<F::Source>) -> DblResult<FamCell<F::Target>> {
        let fx = self.ob(x);
        let top = self.target.id_pro(&fx);
        let bottom = self.pro(&self.source.id_pro(x));
        let components = x.assignment.iter().map(|o| self.functor.unitor(o)).collect::<DblResult<Vec<_>>>()?;
        Ok(FamCell {
            variance: self.target.variance,
            left: self.target.id_arrow(&fx),
            right: self.target.id_arrow(&fx),
            on_spans: SpanMorphism::identity(&top.indexing),
            top,
            bottom,
            components,
        })
    }
}

/// The singleton-family embedding `Δ : D -> DblFam(D)` (or DblFamOp(D)).
#[derive(Debug, Clone, PartialEq)]
pub struct Delta<D: DoubleCategory> {
    source: D,
    target: DblFam<D>,
}

impl<D: DoubleCategory> Delta<D> {
    pub fn new(base: D, variance: Variance) -> Self {
        Delta {
            source: base.clone(),
            target: DblFam { base, variance },
        }
    }
}

impl<D: DoubleCategory> DoubleFunctor for Delta<D> {
    type Source = D;
    type Target = DblFam<D>;

    fn source(&self) -> &D {
        &self.source
    }
    fn target(&self) -> &DblFam<D> {
        &self.target
    }
    fn ob(&self, x: &D::Ob) -> FamObject<D> {
        self.target.delta(x)
    }
    fn arr(&self, f: &D::Arr) -> FamArrow<D> {
        self.target.delta_arrow(f)
    }
    fn pro(&self, m: &D::Pro) -> FamProarrow<D> {
        self.target.delta_pro(m)
    }
    fn cell(&self, a: &D::Cell) -> FamCell<D> {
        self.target.delta_cell(a)
    }
    /// `Δm ⊙ Δn` is indexed by `{pair(*,*)}`; the laxator relabels it to `{*}`.
    fn laxator(&self, m: &D::Pro, n: &D::Pro) -> DblResult<FamCell<D>> {
        let t = &self.target;
        let top = t.compose_pro(&t.delta_pro(m), &t.delta_pro(n))?;
        let bottom = t.delta_pro(&self.source.compose_pro(m, n)?);
        let one = FinFunction::identity(&FinSet::singleton("*"));
        let (from, to) = if t.covariant_tag() { (&top, &bottom) } else { (&bottom, &top) };
        let on_spans = SpanMorphism::new(
            from.indexing.clone(),
            to.indexing.clone(),
            one.clone(),
            FinFunction::new(from.indexing.apex().clone(), to.indexing.apex().clone(), vec![0])?,
            one,
        )?;
        let mn = self.source.compose_pro(m, n)?;
        Ok(FamCell {
            variance: t.variance,
            left: t.id_arrow(&top.src),
            right: t.id_arrow(&top.dst),
            top,
            bottom,
            on_spans,
            components: vec![self.source.id_cell_on_pro(&mn)],
        })
    }
    fn unitor(&self, x: &D::Ob) -> DblResult<FamCell<D>> {
        Ok(self.target.id_cell_on_pro(&self.target.id_pro(&self.target.delta(x))))
    }
}

/// The dictionary between DblFam(1) and Span: a family over the terminal
/// double category is exactly its indexing data.
pub mod terminal_dictionary {
    use super::*;

    pub fn object_to_set(x: &FamObject<Terminal>) -> FinSet {
        x.indexing.clone()
    }

    pub fn set_to_object(s: &FinSet) -> FamObject<Terminal> {
        FamObject {
            indexing: s.clone(),
            assignment: vec![(); s.len()],
        }
    }

    pub fn arrow_to_function(f: &FamArrow<Terminal>) -> FinFunction {
        f.on_index.clone()
    }

    pub fn function_to_arrow(f: &FinFunction) -> FamArrow<Terminal> {
        FamArrow {
            variance: Variance::Covariant,
            src: set_to_object(f.dom()),
            dst: set_to_object(f.cod()),
            on_index: f.clone(),
            components: vec![(); f.dom().len()],
        }
    }

    pub fn proarrow_to_span(m: &FamProarrow<Terminal>) -> SetSpan {
        m.indexing.clone()
    }

    pub fn span_to_proarrow(s: &SetSpan) -> FamProarrow<Terminal> {
        FamProarrow {
            src: set_to_object(s.left_foot()),
            dst: set_to_object(s.right_foot()),
            indexing: s.clone(),
            components: vec![(); s.apex().len()],
        }
    }

    pub fn cell_to_span_morphism(a: &FamCell<Terminal>) -> SpanMorphism {
        a.on_spans.clone()
    }

    pub fn span_morphism_to_cell(a: &SpanMorphism) -> FamCell<Terminal> {
        FamCell {
            variance: Variance::Covariant,
            top: span_to_proarrow(a.src()),
            bottom: span_to_proarrow(a.dst()),
            left: function_to_arrow(a.on_left()),
            right: function_to_arrow(a.on_right()),
            on_spans: a.clone(),
            components: vec![(); a.src().apex().len()],
        }
    }

    /// Outcome of [`verify`]: sizes of the enumerated sorts and any failure.
    #[derive(Debug, Clone, Default, PartialEq, Eq)]
    pub struct DictionaryCheck {
        pub objects: usize,
        pub arrows: usize,
        pub proarrows: usize,
        pub cells: usize,
        pub compositions: usize,
        pub failures: Vec<String>,
        /// Set when the budget ran out before every composite was checked.
        pub partial: bool,
    }

    impl DictionaryCheck {
        pub fn passed(&self) -> bool {
            self.failures.is_empty()
        }
    }

    /// Whether `images` lists each element of `expected` exactly once.
    fn bijective<T: PartialEq + std::hash::Hash + Eq>(images: &[T], expected: &[T]) -> bool {
        let seen: std::collections::HashSet<&T> = images.iter().collect();
        seen.len() == images.len() && images.len() == expected.len() && expected.iter().all(|e| seen.contains(e))
    }

    /// Enumerates DblFam(1) and Span independently with sets of size at most
    /// `bound` and apexes of size at most `bound`, checks that the dictionary
    /// matches the two enumerations one to one on every sort, that both round
    /// trips are identities, and that it carries all four compositions and
    /// all identities to their Span counterparts exactly. At most `budget`
    /// cell frames and composites are examined.
    pub fn verify(bound: usize, budget: usize) -> DblResult<DictionaryCheck> {
        let fam = DblFam::covariant(Terminal);
        let mut out = DictionaryCheck::default();
        let fail = |out: &mut DictionaryCheck, what: String| out.failures.push(what);

        let fam_objects = fam.objects(bound);
        let sets = Span.objects(bound);
        let images: Vec<FinSet> = fam_objects.iter().map(object_to_set).collect();
        out.objects = fam_objects.len();
        if !bijective(&images, &sets) {
            fail(&mut out, "objects: not a bijection".into());
        }
        for s in &sets {
            if object_to_set(&set_to_object(s)) != *s || fam.id_pro(&set_to_object(s)) != span_to_proarrow(&Span.id_pro(s)) {
                fail(&mut out, format!("object {s:?}: round trip or identity"));
            }
        }

        let mut fam_arrows = Vec::new();
        let mut functions = Vec::new();
        for x in &fam_objects {
            for y in &fam_objects {
                fam_arrows.extend(fam.arrows_between(x, y));
            }
        }
        for x in &sets {
            for y in &sets {
                functions.extend(Span.arrows_between(x, y));
            }
        }
        out.arrows = fam_arrows.len();
        let images: Vec<FinFunction> = fam_arrows.iter().map(arrow_to_function).collect();
        if !bijective(&images, &functions) {
            fail(&mut out, "arrows: not a bijection".into());
        }
        for f in &functions {
            let a = function_to_arrow(f);
            if arrow_to_function(&a) != *f || fam.id_cell_on_arrow(&a) != span_morphism_to_cell(&Span.id_cell_on_arrow(f)) {
                fail(&mut out, format!("function {f:?}: round trip or identity cell"));
            }
            for g in functions.iter().filter(|g| g.dom() == f.cod()) {
                out.compositions += 1;
                if arrow_to_function(&fam.compose_arrows(&a, &function_to_arrow(g))?) != f.then(g)? {
                    fail(&mut out, format!("arrow composite {f:?} ; {g:?}"));
                }
            }
        }

        let mut fam_pros = Vec::new();
        let mut spans = Vec::new();
        for x in &fam_objects {
            for y in &fam_objects {
                fam_pros.extend(fam.proarrows_between(x, y, bound));
            }
        }
        for x in &sets {
            for y in &sets {
                spans.extend(Span.proarrows_between(x, y, bound));
            }
        }
        out.proarrows = fam_pros.len();
        let images: Vec<SetSpan> = fam_pros.iter().map(proarrow_to_span).collect();
        if !bijective(&images, &spans) {
            fail(&mut out, "proarrows: not a bijection".into());
        }
        for m in &spans {
            let p = span_to_proarrow(m);
            if proarrow_to_span(&p) != *m || fam.id_cell_on_pro(&p) != span_morphism_to_cell(&Span.id_cell_on_pro(m)) {
                fail(&mut out, format!("span {m:?}: round trip or identity cell"));
            }
            for n in spans.iter().filter(|n| n.left_foot() == m.right_foot()) {
                out.compositions += 1;
                if proarrow_to_span(&fam.compose_pro(&p, &span_to_proarrow(n))?) != m.compose(n)? {
                    fail(&mut out, format!("proarrow composite {m:?} ⊙ {n:?}"));
                }
            }
        }

        let mut fam_cells = Vec::new();
        let mut morphisms = Vec::new();
        let mut work = 0;
        'frames: for (top, bottom) in fam_pros.iter().flat_map(|t| fam_pros.iter().map(move |b| (t, b))) {
            let (s, t) = (proarrow_to_span(top), proarrow_to_span(bottom));
            for left in fam.arrows_between(&top.src, &bottom.src) {
                for right in fam.arrows_between(&top.dst, &bottom.dst) {
                    work += 1;
                    if out.compositions + work > budget {
                        out.partial = true;
                        break 'frames;
                    }
                    fam_cells.extend(fam.cells_in_frame(top, bottom, &left, &right));
                    morphisms.extend(Span.cells_in_frame(&s, &t, &arrow_to_function(&left), &arrow_to_function(&right)));
                }
            }
        }
        out.cells = fam_cells.len();
        let images: Vec<SpanMorphism> = fam_cells.iter().map(cell_to_span_morphism).collect();
        if !bijective(&images, &morphisms) {
            fail(&mut out, "cells: not a bijection".into());
        }
        let mut by_top: std::collections::HashMap<&SetSpan, Vec<&SpanMorphism>> = std::collections::HashMap::new();
        let mut by_left: std::collections::HashMap<&FinFunction, Vec<&SpanMorphism>> = std::collections::HashMap::new();
        for a in &morphisms {
            by_top.entry(a.src()).or_default().push(a);
            by_left.entry(a.on_left()).or_default().push(a);
        }
        for a in &morphisms {
            let c = span_morphism_to_cell(a);
            if cell_to_span_morphism(&c) != *a {
                fail(&mut out, format!("cell {a:?}: round trip"));
            }
            if out.compositions + work > budget {
                out.partial = true;
                break;
            }
            for b in by_top.get(a.dst()).into_iter().flatten() {
                out.compositions += 1;
                if cell_to_span_morphism(&fam.compose_cells_vert(&c, &span_morphism_to_cell(b))?) != a.then(b)? {
                    fail(&mut out, format!("vertical composite {a:?} ; {b:?}"));
                }
            }
            for b in by_left.get(a.on_right()).into_iter().flatten() {
                out.compositions += 1;
                if cell_to_span_morphism(&fam.compose_cells_ext(&c, &span_morphism_to_cell(b))?) != Span.compose_cells_ext(a, b)? {
                    fail(&mut out, format!("external composite {a:?} ⊙ {b:?}"));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::{check_companion, check_conjoint, laws};

    fn f(dom: usize, cod: usize, t: &[usize]) -> FinFunction {
        FinFunction::new(FinSet::range(dom), FinSet::range(cod), t.to_vec()).unwrap()
    }

    fn obj(sizes: &[usize]) -> FamObject<Span> {
        FamObject::new(FinSet::range(sizes.len()), sizes.iter().map(|&k| FinSet::range(k)).collect()).unwrap()
    }

    #[test]
    fn family_companions_over_span() {
        for variance in [Variance::Covariant, Variance::Contravariant] {
            let d = DblFam { base: Span, variance };
            let (x, y) = (obj(&[2, 1]), obj(&[2]));
            let arrow = match variance {
                Variance::Covariant => d.arrow(x, y, f(2, 1, &[0, 0]), vec![f(2, 2, &[1, 0]), f(1, 2, &[1])]).unwrap(),
                Variance::Contravariant => d.arrow(y, x, f(2, 1, &[0, 0]), vec![f(2, 2, &[1, 1]), f(2, 1, &[0, 0])]).unwrap(),
            };
            let c = d.companion(&arrow).unwrap();
            assert_eq!(c.proarrow.indexing.apex().len(), 2);
            check_companion(&d, &c).unwrap();
            check_conjoint(&d, &d.conjoint(&arrow).unwrap()).unwrap();
        }
    }

    #[test]
    fn terminal_families_obey_coherence() {
        for variance in [Variance::Covariant, Variance::Contravariant] {
            let d = DblFam { base: Terminal, variance };
            let x = terminal_dictionary::set_to_object(&FinSet::range(2));
            let pros = d.proarrows_between(&x, &x, 2);
            for m in pros.iter().step_by(4) {
                for n in pros.iter().step_by(3) {
                    assert!(laws::pentagon(&d, m, n, m, n).unwrap());
                    assert!(laws::triangle(&d, m, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn sum_of_two_singletons() {
        let d = DblFam::covariant(Span);
        let outer_d = DblFam::covariant(d.clone());
        let m1 = d.delta_pro(&SetSpan::identity(&FinSet::range(2)));
        let m2 = d.delta_pro(&SetSpan::identity(&FinSet::range(1)));
        let outer = outer_d
            .proarrow(
                FamObject::new(FinSet::range(2), vec![m1.src.clone(), m2.src.clone()]).unwrap(),
                FamObject::new(FinSet::range(2), vec![m1.dst.clone(), m2.dst.clone()]).unwrap(),
                SetSpan::identity(&FinSet::range(2)),
                vec![m1, m2],
            )
            .unwrap();
        let cone = d.sum(&outer).unwrap();
        assert_eq!(cone.pro.indexing.apex().len(), 2);
        assert_eq!(cone.src.len(), 2);
        for c in &cone.cells {
            d.validate_cell(c).unwrap();
        }
    }

    #[test]
    fn extension_of_two_component_family() {
        let d = DblFam::covariant(Span);
        let x = obj(&[2, 1]);
        let y = obj(&[1]);
        let m = d
            .proarrow(
                x.clone(),
                y.clone(),
                SetSpan::new(f(2, 2, &[0, 1]), f(2, 1, &[0, 0])).unwrap(),
                vec![
                    SetSpan::new(f(1, 2, &[1]), f(1, 1, &[0])).unwrap(),
                    SetSpan::new(f(2, 1, &[0, 0]), f(2, 1, &[0, 0])).unwrap(),
                ],
            )
            .unwrap();
        let x2 = obj(&[1]);
        let fa = d.arrow(x, x2.clone(), f(2, 1, &[0, 0]), vec![f(2, 1, &[0, 0]), f(1, 1, &[0])]).unwrap();
        let ga = d.id_arrow(&y);
        let (ext, cell) = fam_extension_span(&d, &m, &fa, &ga).unwrap();
        assert_eq!(ext.indexing.apex().len(), 2);
        d.validate_cell(&cell).unwrap();
    }

    fn two_families(d: &DblFam<Span>) -> Vec<FamProarrow<Span>> {
        let x = obj(&[2, 1]);
        let spans = SetSpan::all_between(&x.indexing, &x.indexing, 2, true);
        let mut out = Vec::new();
        for (k, s) in spans.iter().enumerate().filter(|(k, _)| k % 5 == 1) {
            let comps = (0..s.apex().len())
                .map(|a| {
                    let (i, j) = (s.left().apply(a), s.right().apply(a));
                    Span.proarrows_between(&x.assignment[i], &x.assignment[j], 2)[(k + a) % 3].clone()
                })
                .collect();
            out.push(d.proarrow(x.clone(), x.clone(), s.clone(), comps).unwrap());
        }
        out
    }

    #[test]
    fn span_families_obey_coherence() {
        for variance in [Variance::Covariant, Variance::Contravariant] {
            let d = DblFam { base: Span, variance };
            let pros = two_families(&d);
            assert!(pros.len() >= 3);
            for m in &pros {
                for n in &pros {
                    assert!(laws::triangle(&d, m, n).unwrap());
                    assert!(laws::left_unitor_coherence(&d, m, n).unwrap());
                    assert!(laws::right_unitor_coherence(&d, m, n).unwrap());
                }
                assert!(laws::pentagon(&d, m, m, m, m).unwrap());
                for c in d.cells_in_frame(m, m, &d.id_arrow(&m.src), &d.id_arrow(&m.dst)).iter().take(3) {
                    assert!(laws::unitor_naturality(&d, c).unwrap());
                    assert!(laws::associator_naturality(&d, c, c, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn delta_laxator_is_invertible() {
        for variance in [Variance::Covariant, Variance::Contravariant] {
            let delta = Delta::new(Span, variance);
            let m = SetSpan::new(f(2, 2, &[0, 1]), f(2, 1, &[0, 0])).unwrap();
            let n = SetSpan::new(f(1, 1, &[0]), f(1, 3, &[2])).unwrap();
            let lax = delta.laxator(&m, &n).unwrap();
            delta.target().validate_cell(&lax).unwrap();
            assert!(delta.target().is_iso_cell(&lax));
        }
    }

    #[test]
    fn terminal_dictionary_round_trips() {
        use terminal_dictionary::*;
        let s = SetSpan::new(f(3, 2, &[0, 1, 1]), f(3, 2, &[1, 1, 0])).unwrap();
        assert_eq!(proarrow_to_span(&span_to_proarrow(&s)), s);
        let a = SpanMorphism::identity(&s);
        let cell = span_morphism_to_cell(&a);
        DblFam::covariant(Terminal).validate_cell(&cell).unwrap();
        assert_eq!(cell_to_span_morphism(&cell), a);
    }
}
