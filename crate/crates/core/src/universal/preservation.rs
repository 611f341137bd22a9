//! Comparison cells measuring whether a double functor preserves chosen
//! products or coproducts.

use super::comparison::unique;
use super::{ComparisonCell, ComparisonKind, HasCoproducts, HasProducts};
use crate::dblcat::{DblResult, DoubleCategory, DoubleFunctor};
use crate::family::{FamObject, FamProarrow};

type Tgt<F> = <F as DoubleFunctor>::Target;
type Src<F> = <F as DoubleFunctor>::Source;

/// The comparisons for one family: the arrows at both ends (as identity
/// cells on them) and the cell between the vertex proarrows.
#[derive(Debug, Clone, PartialEq)]
pub struct Preservation<E: DoubleCategory> {
    pub src_arrow: E::Arr,
    pub dst_arrow: E::Arr,
    pub src: ComparisonCell<E>,
    pub dst: ComparisonCell<E>,
    pub pro: ComparisonCell<E>,
}

impl<E: DoubleCategory> Preservation<E> {
    pub fn is_iso(&self) -> bool {
        self.src.is_iso() && self.dst.is_iso() && self.pro.is_iso()
    }
}

fn image_object<F: DoubleFunctor>(f: &F, x: &FamObject<Src<F>>) -> FamObject<Tgt<F>> {
    FamObject {
        indexing: x.indexing.clone(),
        assignment: x.assignment.iter().map(|o| f.ob(o)).collect(),
    }
}

fn image_family<F: DoubleFunctor>(f: &F, m: &FamProarrow<Src<F>>) -> FamProarrow<Tgt<F>> {
    FamProarrow {
        src: image_object(f, &m.src),
        dst: image_object(f, &m.dst),
        indexing: m.indexing.clone(),
        components: m.components.iter().map(|p| f.pro(p)).collect(),
    }
}

/// `Ψ : F Πm => Π F m`, the unique cell with `Ψ ; π_a = F π_a`, over the
/// arrows `F Πx -> Π F x` paired from `F π_i`.
pub fn product_preservation<F>(f: &F, m: &FamProarrow<Src<F>>) -> DblResult<Preservation<Tgt<F>>>
where
    F: DoubleFunctor,
    Src<F>: HasProducts,
    Tgt<F>: HasProducts,
{
    let (d, e) = (f.source(), f.target());
    let chosen = d.product(m)?;
    let image = e.product(&image_family(f, m))?;
    let arrow = |vertex: &<Src<F> as DoubleCategory>::Ob, legs: &[<Src<F> as DoubleCategory>::Arr], target: &<Tgt<F> as DoubleCategory>::Ob, target_legs: &[<Tgt<F> as DoubleCategory>::Arr]| {
        let constraints: Vec<_> = target_legs.iter().zip(legs).map(|(p, q)| (p.clone(), f.arr(q))).collect();
        unique(e.solve_arrow_post(&f.ob(vertex), target, &constraints), "product preservation arrow")
    };
    let src_arrow = arrow(&chosen.src, &chosen.src_legs, &image.src, &image.src_legs)?;
    let dst_arrow = arrow(&chosen.dst, &chosen.dst_legs, &image.dst, &image.dst_legs)?;
    let constraints: Vec<_> = image.cells.iter().zip(&chosen.cells).map(|(p, q)| (p.clone(), f.cell(q))).collect();
    let cell = unique(
        e.solve_post(&f.pro(&chosen.pro), &image.pro, &src_arrow, &dst_arrow, &constraints),
        "product preservation cell",
    )?;
    Ok(Preservation {
        src: ComparisonCell::new(e, ComparisonKind::PsiObj, e.id_cell_on_arrow(&src_arrow)),
        dst: ComparisonCell::new(e, ComparisonKind::PsiObj, e.id_cell_on_arrow(&dst_arrow)),
        pro: ComparisonCell::new(e, ComparisonKind::PsiPro, cell),
        src_arrow,
        dst_arrow,
    })
}

/// `Φ : Σ F m => F Σm`, the unique cell with `ι_a ; Φ = F ι_a`, over the
/// arrows `Σ F x -> F Σx` copaired from `F ι_i`.
pub fn coproduct_preservation<F>(f: &F, m: &FamProarrow<Src<F>>) -> DblResult<Preservation<Tgt<F>>>
where
    F: DoubleFunctor,
    Src<F>: HasCoproducts,
    Tgt<F>: HasCoproducts,
{
    let (d, e) = (f.source(), f.target());
    let chosen = d.coproduct(m)?;
    let image = e.coproduct(&image_family(f, m))?;
    let arrow = |vertex: &<Src<F> as DoubleCategory>::Ob, legs: &[<Src<F> as DoubleCategory>::Arr], source: &<Tgt<F> as DoubleCategory>::Ob, source_legs: &[<Tgt<F> as DoubleCategory>::Arr]| {
        let constraints: Vec<_> = source_legs.iter().zip(legs).map(|(i, q)| (i.clone(), f.arr(q))).collect();
        unique(e.solve_arrow_pre(source, &f.ob(vertex), &constraints), "coproduct preservation arrow")
    };
    let src_arrow = arrow(&chosen.src, &chosen.src_legs, &image.src, &image.src_legs)?;
    let dst_arrow = arrow(&chosen.dst, &chosen.dst_legs, &image.dst, &image.dst_legs)?;
    let constraints: Vec<_> = image.cells.iter().zip(&chosen.cells).map(|(i, q)| (i.clone(), f.cell(q))).collect();
    let cell = unique(
        e.solve_pre(&image.pro, &f.pro(&chosen.pro), &src_arrow, &dst_arrow, &constraints),
        "coproduct preservation cell",
    )?;
    Ok(Preservation {
        src: ComparisonCell::new(e, ComparisonKind::PhiObj, e.id_cell_on_arrow(&src_arrow)),
        dst: ComparisonCell::new(e, ComparisonKind::PhiObj, e.id_cell_on_arrow(&dst_arrow)),
        pro: ComparisonCell::new(e, ComparisonKind::PhiPro, cell),
        src_arrow,
        dst_arrow,
    })
}
