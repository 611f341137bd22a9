//! Double functors between the concrete double categories.

use std::fmt::Debug;

use super::mat::MatProarrow;
use super::span::pair_positions;
use super::{
    mat_cell_to_span, mat_to_span, span_cell_to_mat, span_to_mat, DblResult, DoubleCategory, Mat, MatCell, Op, Span,
};
use crate::finset::{pair_label, FinFunction, FinSet, SetSpan, SpanMorphism};

/// A lax double functor, given on all four sorts together with its laxators
/// `F m ⊙ F n => F(m ⊙ n)` and unitors `id_{F x} => F(id_x)`.
pub trait DoubleFunctor: Clone + Debug + Send + Sync {
    type Source: DoubleCategory;
    type Target: DoubleCategory;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;

    fn ob(&self, x: &<Self::Source as DoubleCategory>::Ob) -> <Self::Target as DoubleCategory>::Ob;
    fn arr(&self, f: &<Self::Source as DoubleCategory>::Arr) -> <Self::Target as DoubleCategory>::Arr;
    fn pro(&self, m: &<Self::Source as DoubleCategory>::Pro) -> <Self::Target as DoubleCategory>::Pro;
    fn cell(&self, a: &<Self::Source as DoubleCategory>::Cell) -> <Self::Target as DoubleCategory>::Cell;
    fn laxator(
        &self,
        m: &<Self::Source as DoubleCategory>::Pro,
        n: &<Self::Source as DoubleCategory>::Pro,
    ) -> DblResult<<Self::Target as DoubleCategory>::Cell>;
    fn unitor(&self, x: &<Self::Source as DoubleCategory>::Ob) -> DblResult<<Self::Target as DoubleCategory>::Cell>;
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IdentityFunctor<D>(pub D);

impl<D: DoubleCategory> DoubleFunctor for IdentityFunctor<D> {
    type Source = D;
    type Target = D;

    fn source(&self) -> &D {
        &self.0
    }
    fn target(&self) -> &D {
        &self.0
    }
    fn ob(&self, x: &D::Ob) -> D::Ob {
        x.clone()
    }
    fn arr(&self, f: &D::Arr) -> D::Arr {
        f.clone()
    }
    fn pro(&self, m: &D::Pro) -> D::Pro {
        m.clone()
    }
    fn cell(&self, a: &D::Cell) -> D::Cell {
        a.clone()
    }
    fn laxator(&self, m: &D::Pro, n: &D::Pro) -> DblResult<D::Cell> {
        Ok(self.0.id_cell_on_pro(&self.0.compose_pro(m, n)?))
    }
    fn unitor(&self, x: &D::Ob) -> DblResult<D::Cell> {
        Ok(self.0.id_cell_on_pro(&self.0.id_pro(x)))
    }
}

/// The identification `D -> (D^op)^op`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OpOp<D>(pub D, pub Op<Op<D>>);

impl<D: DoubleCategory> OpOp<D> {
    pub fn new(d: D) -> Self {
        OpOp(d.clone(), Op(Op(d)))
    }
}

impl<D: DoubleCategory> DoubleFunctor for OpOp<D> {
    type Source = D;
    type Target = Op<Op<D>>;

    fn source(&self) -> &D {
        &self.0
    }
    fn target(&self) -> &Op<Op<D>> {
        &self.1
    }
    fn ob(&self, x: &D::Ob) -> D::Ob {
        x.clone()
    }
    fn arr(&self, f: &D::Arr) -> D::Arr {
        f.clone()
    }
    fn pro(&self, m: &D::Pro) -> D::Pro {
        m.clone()
    }
    fn cell(&self, a: &D::Cell) -> D::Cell {
        a.clone()
    }
    fn laxator(&self, m: &D::Pro, n: &D::Pro) -> DblResult<D::Cell> {
        Ok(self.0.id_cell_on_pro(&self.0.compose_pro(m, n)?))
    }
    fn unitor(&self, x: &D::Ob) -> DblResult<D::Cell> {
        Ok(self.0.id_cell_on_pro(&self.0.id_pro(x)))
    }
}

/// The equivalence Span -> Mat taking fibers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpanToMat;

impl DoubleFunctor for SpanToMat {
    type Source = Span;
    type Target = Mat;

    fn source(&self) -> &Span {
        &Span
    }
    fn target(&self) -> &Mat {
        &Mat
    }
    fn ob(&self, x: &FinSet) -> FinSet {
        x.clone()
    }
    fn arr(&self, f: &FinFunction) -> FinFunction {
        f.clone()
    }
    fn pro(&self, m: &SetSpan) -> MatProarrow {
        span_to_mat(m)
    }
    fn cell(&self, a: &SpanMorphism) -> MatCell {
        span_cell_to_mat(a)
    }
    fn laxator(&self, m: &SetSpan, n: &SetSpan) -> DblResult<MatCell> {
        let (mm, nn) = (span_to_mat(m), span_to_mat(n));
        let top = mm.compose(&nn)?;
        let bottom = span_to_mat(&Span.compose_pro(m, n)?);
        let (nx, ny, nz) = (mm.src().len(), mm.dst().len(), nn.dst().len());
        let mut maps = Vec::with_capacity(nx * nz);
        for x in 0..nx {
            for z in 0..nz {
                let target = bottom.entry(x, z);
                let mut table = Vec::new();
                for y in 0..ny {
                    for s in mm.entry(x, y).elements() {
                        for t in nn.entry(y, z).elements() {
                            table.push(target.require(&pair_label(s, t))?);
                        }
                    }
                }
                maps.push(FinFunction::new(top.entry(x, z).clone(), target.clone(), table)?);
            }
        }
        MatCell::new(top, bottom, FinFunction::identity(m.left_foot()), FinFunction::identity(n.right_foot()), maps)
    }
    fn unitor(&self, x: &FinSet) -> DblResult<MatCell> {
        Ok(MatCell::identity(&MatProarrow::identity(x)))
    }
}

/// The inverse equivalence Mat -> Span taking disjoint unions of entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatToSpan;

fn entry_offsets(m: &MatProarrow) -> Vec<usize> {
    let mut acc = 0;
    m.entries()
        .iter()
        .map(|e| {
            let o = acc;
            acc += e.len();
            o
        })
        .collect()
}

/// For each apex position of `mat_to_span(m)`, its entry index and element.
fn apex_positions(m: &MatProarrow) -> Vec<(usize, usize)> {
    m.entries().iter().enumerate().flat_map(|(k, e)| (0..e.len()).map(move |i| (k, i))).collect()
}

impl DoubleFunctor for MatToSpan {
    type Source = Mat;
    type Target = Span;

    fn source(&self) -> &Mat {
        &Mat
    }
    fn target(&self) -> &Span {
        &Span
    }
    fn ob(&self, x: &FinSet) -> FinSet {
        x.clone()
    }
    fn arr(&self, f: &FinFunction) -> FinFunction {
        f.clone()
    }
    fn pro(&self, m: &MatProarrow) -> SetSpan {
        mat_to_span(m)
    }
    fn cell(&self, a: &MatCell) -> SpanMorphism {
        mat_cell_to_span(a)
    }
    fn laxator(&self, m: &MatProarrow, n: &MatProarrow) -> DblResult<SpanMorphism> {
        let (sm, sn) = (mat_to_span(m), mat_to_span(n));
        let top = Span.compose_pro(&sm, &sn)?;
        let mn = m.compose(n)?;
        let bottom = mat_to_span(&mn);
        let (pm, pn, omn) = (apex_positions(m), apex_positions(n), entry_offsets(&mn));
        let (ny, nz) = (m.dst().len(), n.dst().len());
        let table = pair_positions(&sm, &sn)
            .into_iter()
            .map(|(s, t)| {
                let (km, e) = pm[s];
                let (kn, f) = pn[t];
                let (x, y, z) = (km / ny, km % ny, kn % nz);
                omn[x * nz + z] + m.encode(n, x, z, (y, e, f))
            })
            .collect();
        let on_apex = FinFunction::new(top.apex().clone(), bottom.apex().clone(), table)?;
        Ok(SpanMorphism::new(top, bottom, FinFunction::identity(m.src()), on_apex, FinFunction::identity(n.dst()))?)
    }
    fn unitor(&self, x: &FinSet) -> DblResult<SpanMorphism> {
        let bottom = mat_to_span(&MatProarrow::identity(x));
        let on_apex = FinFunction::new(x.clone(), bottom.apex().clone(), (0..x.len()).collect())?;
        Ok(SpanMorphism::new(
            SetSpan::identity(x),
            bottom,
            FinFunction::identity(x),
            on_apex,
            FinFunction::identity(x),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(l: &[usize], r: &[usize], nx: usize, ny: usize) -> SetSpan {
        let apex = FinSet::range(l.len());
        SetSpan::new(
            FinFunction::new(apex.clone(), FinSet::range(nx), l.to_vec()).unwrap(),
            FinFunction::new(apex, FinSet::range(ny), r.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn span_to_mat_laxator_is_iso() {
        let m = span(&[0, 1, 1], &[1, 0, 1], 2, 2);
        let n = span(&[1, 1, 0], &[0, 1, 1], 2, 2);
        let c = SpanToMat.laxator(&m, &n).unwrap();
        assert!(Mat.invert_cell(&c).is_some());
    }

    #[test]
    fn mat_to_span_laxator_is_iso() {
        let m = span_to_mat(&span(&[0, 1, 1], &[1, 0, 1], 2, 2));
        let n = span_to_mat(&span(&[1, 0], &[0, 0], 2, 1));
        let c = MatToSpan.laxator(&m, &n).unwrap();
        assert!(c.is_iso());
        assert!(MatToSpan.unitor(&FinSet::range(3)).unwrap().is_iso());
    }
}
